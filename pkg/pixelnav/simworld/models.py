from dataclasses import dataclass

from pixelnav.geometry.models import Pose2D
from pixelnav.geometry.schemas import CameraModel
from pixelnav.geometry.service import wrap_angle


@dataclass(frozen=True)
class SimRobot:
    """True metric pose in the world frame and the camera the renderer uses."""
    pose: Pose2D
    cam: CameraModel

    def __post_init__(self) -> None:
        if self.pose.theta != wrap_angle(self.pose.theta):
            object.__setattr__(
                self, "pose", Pose2D(self.pose.x, self.pose.y, wrap_angle(self.pose.theta))
            )

    def moved_to(self, pose: Pose2D) -> "SimRobot":
        return SimRobot(pose=pose, cam=self.cam)


@dataclass(frozen=True)
class Collision:
    """
    Contact between the robot disk and obstacle `obstacle_id` (−1 for the world
    boundary). `normal` points from the obstacle toward the robot; `clearance`
    is the signed distance from the obstacle surface to the robot center.
    """
    obstacle_id: int
    normal: tuple[float, float]
    clearance: float
