from dataclasses import dataclass


@dataclass(frozen=True)
class PixelPoint:
    """Real-valued image coordinates; may fall outside the image after projection."""
    u: float
    v: float


@dataclass(frozen=True)
class GroundPoint:
    """Robot-frame ground point: x forward, y left (meters)."""
    x: float
    y: float


@dataclass(frozen=True)
class Pose2D:
    """World-frame pose (x, y, theta)."""
    x: float
    y: float
    theta: float
