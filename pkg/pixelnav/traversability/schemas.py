from typing import Literal

from pydantic import BaseModel, Field

from pixelnav.traversability.service import DEFAULT_POINTS_PER_CONTOUR


class TraversabilityConfig(BaseModel):
    model_config = {"frozen": True}

    # Episodes render the mask from the world; `ProbabilityMapEstimator` takes
    # its threshold directly.
    backend: Literal["oracle"] = "oracle"
    n_per_contour: int = Field(default=DEFAULT_POINTS_PER_CONTOUR, ge=1)
