import enum
from dataclasses import dataclass

from pixelnav.geometry.models import PixelPoint


class SubgoalMode(str, enum.Enum):
    ON_RAY = "on_ray"
    FALLBACK_CLOSEST = "fallback_closest"


@dataclass(frozen=True)
class YawEstimate:
    """Relative rotation α ∈ (−π, π] that aligns the current view with the subgoal view."""
    alpha: float
    valid: bool = True


@dataclass(frozen=True)
class SubgoalPixel:
    p: PixelPoint
    mode: SubgoalMode
