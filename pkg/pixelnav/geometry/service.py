"""
Ground-plane projection P and inverse perspective mapping P⁻¹.

Frames:
- Robot frame R: X forward, Y left, ground plane z = 0.
- Camera frame C: X right, Y down, Z forward; the camera sits h_cam above
  the robot origin, so a ground point (x, y) is (−y, h_cam, x) in C.

Scalar functions operate on PixelPoint / GroundPoint values; the *_array
variants take (N, 2) arrays and are used on the planner and renderer hot paths.
"""
import math

import numpy as np
from numpy.typing import NDArray

from pixelnav.core.exceptions import DegenerateProjection, HorizonDegenerate
from pixelnav.geometry.models import GroundPoint, PixelPoint, Pose2D
from pixelnav.geometry.schemas import CameraModel

EPS_PROJ = 1e-6  # meters
EPS_V = 0.5  # pixels below the horizon row


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (−π, π]."""
    wrapped = math.atan2(math.sin(angle), math.cos(angle))
    if wrapped == -math.pi:
        return math.pi
    return wrapped


def wrap_angles(angles: NDArray[np.float64]) -> NDArray[np.float64]:
    wrapped = np.arctan2(np.sin(angles), np.cos(angles))
    return np.where(wrapped == -np.pi, np.pi, wrapped)


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def project_ground_point(cam: CameraModel, p: GroundPoint) -> PixelPoint:
    if p.x < EPS_PROJ:
        raise DegenerateProjection(p.x, EPS_PROJ)
    u = cam.c_x - cam.f_x * p.y / p.x
    v = cam.c_y + cam.f_y * cam.h_cam / p.x
    return PixelPoint(u=u, v=v)


def backproject_pixel(cam: CameraModel, q: PixelPoint) -> GroundPoint:
    dv = q.v - cam.c_y
    if q.v <= cam.c_y + EPS_V:
        raise HorizonDegenerate(q.v, cam.c_y)
    x = cam.f_y * cam.h_cam / dv
    y = -(q.u - cam.c_x) * cam.f_y * cam.h_cam / (cam.f_x * dv)
    return GroundPoint(x=x, y=y)


def project_ground_array(cam: CameraModel, xy: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Project (..., 2) ground points to (..., 2) pixels.
    Points with x < EPS_PROJ yield NaN; callers decide how to penalise them.
    """
    x = xy[..., 0]
    y = xy[..., 1]
    valid = x >= EPS_PROJ
    safe_x = np.where(valid, x, 1.0)
    u = np.where(valid, cam.c_x - cam.f_x * y / safe_x, np.nan)
    v = np.where(valid, cam.c_y + cam.f_y * cam.h_cam / safe_x, np.nan)
    return np.stack([u, v], axis=-1)


def backproject_array(cam: CameraModel, uv: NDArray[np.float64]) -> NDArray[np.float64]:
    """Backproject (N, 2) pixels; raises HorizonDegenerate if any pixel is at or above the horizon."""
    uv = np.asarray(uv, dtype=np.float64).reshape(-1, 2)
    v = uv[:, 1]
    bad = v <= cam.c_y + EPS_V
    if np.any(bad):
        raise HorizonDegenerate(float(v[bad][0]), cam.c_y)
    dv = v - cam.c_y
    x = cam.f_y * cam.h_cam / dv
    y = -(uv[:, 0] - cam.c_x) * cam.f_y * cam.h_cam / (cam.f_x * dv)
    return np.stack([x, y], axis=-1)


def world_to_robot(robot_pose: Pose2D, p_world: tuple[float, float]) -> GroundPoint:
    dx = p_world[0] - robot_pose.x
    dy = p_world[1] - robot_pose.y
    c = math.cos(robot_pose.theta)
    s = math.sin(robot_pose.theta)
    return GroundPoint(x=c * dx + s * dy, y=-s * dx + c * dy)


def robot_to_world(robot_pose: Pose2D, p: GroundPoint) -> tuple[float, float]:
    c = math.cos(robot_pose.theta)
    s = math.sin(robot_pose.theta)
    return (robot_pose.x + c * p.x - s * p.y, robot_pose.y + s * p.x + c * p.y)


def world_to_robot_array(robot_pose: Pose2D, xy: NDArray[np.float64]) -> NDArray[np.float64]:
    c = math.cos(robot_pose.theta)
    s = math.sin(robot_pose.theta)
    dx = xy[..., 0] - robot_pose.x
    dy = xy[..., 1] - robot_pose.y
    return np.stack([c * dx + s * dy, -s * dx + c * dy], axis=-1)
