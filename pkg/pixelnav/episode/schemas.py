from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator

from pixelnav.simworld.schemas import CircleObstacle, Obstacle, PolygonObstacle, WorldModel
from pixelnav.topograph.schemas import GraphDocument


class EpisodeConfig(BaseModel):
    """One closed-loop run. File paths are resolved by the caller; thresholds are metric."""

    model_config = {"frozen": True}

    world: str | None = None
    graph: str | None = None
    goal_node: int | None = Field(default=None, ge=0)  # None → last graph node
    max_steps: int = Field(default=2000, ge=1)
    reloc_period: int = Field(default=10, ge=1)  # R_reloc, steps
    l_sg: int = Field(default=2, ge=1)
    v_freeze: float = Field(default=0.02, gt=0)
    t_freeze: int = Field(default=15, ge=1)
    d_lost: float = Field(default=5.0, gt=0)
    d_goal: float = Field(default=0.5, gt=0)
    seed: int = Field(default=0, ge=0)
    perturbation: Obstacle | None = None
    path_method: Literal["dijkstra", "astar"] = "dijkstra"
    # The simulator renders no probability maps or descriptors, so closed-loop
    # runs use the oracle backends; the image-derived ones are library seams.
    localizer: Literal["oracle"] = "oracle"
    yaw_estimator: Literal["oracle"] = "oracle"

    @field_validator("perturbation")
    @classmethod
    def mark_target(
        cls, value: CircleObstacle | PolygonObstacle | None
    ) -> CircleObstacle | PolygonObstacle | None:
        if value is None or value.is_target:
            return value
        return value.model_copy(update={"is_target": True})


class LocationSpec(BaseModel):
    model_config = {"frozen": True}

    name: str
    world: str
    graph: str


class SuiteConfig(BaseModel):
    """
    Evaluation protocol: per location, `trials` runs without perturbation and
    `trials` runs per listed perturbation obstacle.
    """

    model_config = {"frozen": True}

    trials: int = Field(default=3, ge=1)
    perturbations: list[Obstacle] = Field(default_factory=list)
    locations: list[LocationSpec] = Field(default_factory=list)
    workers: int | None = Field(default=None, ge=1)


# ── HTTP ─────────────────────────────────────────────────────────────────────


class EpisodeRunRequest(BaseModel):
    """Inline world and graph; `config` is a partial RunConfig document."""
    world: WorldModel
    graph: GraphDocument
    config: dict[str, Any] = Field(default_factory=dict)
    include_trajectory: bool = False


class TrajectoryRow(BaseModel):
    t: int
    x: float
    y: float
    theta: float
    v: float
    w: float
    event: str


class EpisodeSummaryResponse(BaseModel):
    model_config = {"from_attributes": True}

    dc_count: int
    ic_count: int
    target_dc_count: int
    freeze_count: int
    goal_reached: bool
    steps: int
    outcome: str


class EpisodeRunResponse(EpisodeSummaryResponse):
    trajectory: list[TrajectoryRow] | None = None


class SuiteRunRequest(BaseModel):
    """`config` must name world/graph files readable by the server (suite.locations or episode.*)."""
    config: dict[str, Any] = Field(default_factory=dict)


class SuiteMetricsResponse(BaseModel):
    model_config = {"from_attributes": True}

    adc: float
    aic: float
    af: float
    tdcr: float = Field(ge=0, le=1)
    grr: float = Field(ge=0, le=1)
    runs: int
    perturbation_runs: int


class SuiteRunRow(EpisodeSummaryResponse):
    location: str
    trial: int
    seed: int
    perturbation: int | None


class SuiteRunResponse(BaseModel):
    metrics: SuiteMetricsResponse
    locations: dict[str, SuiteMetricsResponse]
    runs: list[SuiteRunRow]
