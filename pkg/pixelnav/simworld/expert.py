"""Scripted expert: a pure-pursuit follower that records a pose sequence along a waypoint polyline."""
import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from pixelnav.core.exceptions import InfeasibleWaypoints
from pixelnav.geometry.models import Pose2D
from pixelnav.geometry.service import wrap_angle
from pixelnav.simworld.schemas import WorldModel
from pixelnav.simworld.service import check_collision

logger = logging.getLogger(__name__)


def _segment_param(p: NDArray[np.float64], a: NDArray[np.float64], b: NDArray[np.float64]) -> tuple[float, float]:
    e = b - a
    t = float(np.clip((p - a) @ e / (e @ e), 0.0, 1.0))
    return t, float(np.hypot(*(p - (a + t * e))))


def _lookahead_point(
    path: NDArray[np.float64], seg: int, t: float, distance: float
) -> NDArray[np.float64]:
    point = path[seg] + t * (path[seg + 1] - path[seg])
    remaining = distance
    while True:
        end = path[seg + 1]
        left = float(np.hypot(*(end - point)))
        if left >= remaining or seg + 2 >= path.shape[0]:
            if left <= remaining:
                return end
            return point + (end - point) * (remaining / left)
        remaining -= left
        point = end
        seg += 1


def record_expert(
    world: WorldModel,
    waypoints: Sequence[tuple[float, float]] | None = None,
    *,
    dt: float = 0.2,
    speed: float = 0.3,
    lookahead: float = 0.3,
    w_max: float = 2.0,
    max_steps: int = 20_000,
) -> list[Pose2D]:
    """
    Follow the waypoint polyline with pure pursuit at constant speed and return
    every pose, starting at the first waypoint facing the second.
    """
    raw = list(waypoints if waypoints is not None else world.expert_waypoints)
    if len(raw) < 2:
        raise InfeasibleWaypoints(f"at least 2 waypoints are required, got {len(raw)}")
    path = np.asarray(raw, dtype=np.float64)
    for i, (x, y) in enumerate(raw):
        if not world.bounds.contains(x, y):
            raise InfeasibleWaypoints(f"waypoint {i} ({x}, {y}) lies outside the world bounds")
        hit = check_collision(world, (x, y))
        if hit is not None:
            raise InfeasibleWaypoints(f"waypoint {i} ({x}, {y}) collides with obstacle {hit.obstacle_id}")
    keep = np.concatenate([[True], np.any(np.diff(path, axis=0) != 0.0, axis=1)])
    path = path[keep]
    if path.shape[0] < 2:
        raise InfeasibleWaypoints("waypoints collapse to a single point")

    first = path[1] - path[0]
    pose = Pose2D(x=float(path[0, 0]), y=float(path[0, 1]), theta=math.atan2(first[1], first[0]))
    poses = [pose]
    seg = 0
    last = path.shape[0] - 2
    for step in range(max_steps):
        p = np.array([pose.x, pose.y])
        t, d = _segment_param(p, path[seg], path[seg + 1])
        while seg < last:
            t_next, d_next = _segment_param(p, path[seg + 1], path[seg + 2])
            if t < 1.0 and d_next > d:
                break
            seg, t, d = seg + 1, t_next, d_next
        goal = path[-1]
        if seg == last and (t >= 1.0 or float(np.hypot(*(goal - p))) <= speed * dt):
            break

        target = _lookahead_point(path, seg, t, lookahead)
        bearing = wrap_angle(math.atan2(target[1] - pose.y, target[0] - pose.x) - pose.theta)
        w = 2.0 * speed * math.sin(bearing) / lookahead
        w = min(max(w, -w_max), w_max)
        pose = Pose2D(
            x=pose.x + speed * math.cos(pose.theta) * dt,
            y=pose.y + speed * math.sin(pose.theta) * dt,
            theta=wrap_angle(pose.theta + w * dt),
        )
        hit = check_collision(world, (pose.x, pose.y))
        if hit is not None:
            raise InfeasibleWaypoints(
                f"follower collided with obstacle {hit.obstacle_id} at step {step + 1} "
                f"({pose.x:.3f}, {pose.y:.3f})"
            )
        poses.append(pose)
    else:
        raise InfeasibleWaypoints(f"follower did not reach the last waypoint within {max_steps} steps")

    logger.info("Recorded %d expert poses over %d waypoints", len(poses), len(raw))
    return poses
