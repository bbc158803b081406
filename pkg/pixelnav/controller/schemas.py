from pydantic import BaseModel, Field, model_validator


class MppiConfig(BaseModel):
    """Planner tuning. Defaults for dt, weights, Q_ctrl and r_safe are the deployment values."""

    model_config = {"frozen": True, "populate_by_name": True}

    dt: float = Field(default=0.2, gt=0)
    horizon_steps: int = Field(default=20, ge=1)
    num_samples: int = Field(default=512, ge=2)
    lambda_: float = Field(default=1.0, gt=0, alias="lambda")
    sigma_v: float = Field(default=0.3, gt=0)
    sigma_w: float = Field(default=0.5, gt=0)
    w_obst: float = Field(default=10.0, ge=0)
    w_sg: float = Field(default=10.0, ge=0)
    q_ctrl: tuple[float, float] = (1.0, 100.0)  # diagonal of Q_ctrl for (v, w)
    r_safe: float = Field(default=2.0, gt=0)
    v_min: float = Field(default=0.0, ge=0)
    v_max: float = Field(default=1.0, gt=0)
    w_max: float = Field(default=1.0, gt=0)
    rng_seed: int = 0
    antithetic: bool = True

    @model_validator(mode="after")
    def validate_bounds(self) -> "MppiConfig":
        if self.v_min > self.v_max:
            raise ValueError(f"v_min={self.v_min} exceeds v_max={self.v_max}")
        if min(self.q_ctrl) < 0:
            raise ValueError("q_ctrl entries must be non-negative")
        return self
