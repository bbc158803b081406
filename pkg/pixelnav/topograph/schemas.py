import math

from pydantic import BaseModel, Field


class GraphBuildParams(BaseModel):
    model_config = {"frozen": True}

    rho: float = Field(default=2.0, gt=0)  # Euclidean criterion coefficient, multiplies μ
    phi_max: float = Field(default=math.pi / 4, gt=0, le=math.pi)
    downsample_stride: int = Field(default=1, ge=1)


class NodeDocument(BaseModel):
    id: int = Field(ge=0)
    pose: tuple[float, float]
    phi: float
    descriptor: list[float] | None = None


class EdgeDocument(BaseModel):
    model_config = {"populate_by_name": True}

    from_: int = Field(alias="from", ge=0)
    to: int = Field(ge=0)
    weight: float = Field(ge=0)


class GraphDocument(BaseModel):
    """On-disk topological graph (JSON)."""
    nodes: list[NodeDocument]
    edges: list[EdgeDocument]
    build_params: GraphBuildParams


class PoseSequenceDocument(BaseModel):
    """Recorded scale-free positions, as written by `pixelnav record`."""
    positions: list[tuple[float, float]]
    step: float = Field(default=0.2, gt=0)


class BuildGraphRequest(BaseModel):
    positions: list[tuple[float, float]] = Field(min_length=2)
    params: GraphBuildParams = Field(default_factory=GraphBuildParams)
    descriptors: list[list[float]] | None = None
