from pydantic import BaseModel, Field, model_validator


class SubgoalConfig(BaseModel):
    """Ground-ray sampling used to trace the heading through the mask."""
    d_min: float = Field(default=0.3, gt=0)
    d_step: float = Field(default=0.05, gt=0)
    d_max: float = Field(default=20.0, gt=0)
    fraction: float = Field(default=2.0 / 3.0, gt=0, le=1)
    yaw_sigma: float = Field(default=0.0, ge=0)  # oracle yaw noise, radians

    @model_validator(mode="after")
    def validate_range(self) -> "SubgoalConfig":
        if self.d_max <= self.d_min:
            raise ValueError("d_max must exceed d_min")
        return self
