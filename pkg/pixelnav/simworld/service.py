"""
Simulator oracles: ground-truth traversability rendering, collision checks,
field-of-view visibility and noisy localization.

Rendering works in the robot frame: obstacles and bounds are moved into R
and tested against a per-camera grid of backprojected ground points, so the
mask depends only on the relative geometry between the robot and the world.
"""
import logging
import math
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from pixelnav.geometry.models import Pose2D
from pixelnav.geometry.schemas import CameraModel
from pixelnav.geometry.service import EPS_V, world_to_robot_array
from pixelnav.simworld.models import Collision, SimRobot
from pixelnav.simworld.schemas import CircleObstacle, PolygonObstacle, WorldModel
from pixelnav.topograph.models import TopoGraph
from pixelnav.topograph.service import localize
from pixelnav.traversability.models import TraversabilityMask

logger = logging.getLogger(__name__)

BOUNDARY_ID = -1
CONTACT_TOL = 1e-9
EDGE_SAMPLE_STEP = 0.02  # meters between sampled polygon boundary points
CIRCLE_SAMPLES = 720


@lru_cache(maxsize=16)
def ground_grid(cam: CameraModel) -> tuple[NDArray[np.bool_], NDArray[np.float64]]:
    """
    (H, W) below-horizon flags and (H, W, 2) robot-frame ground points of every
    pixel center. Rows at or above the horizon hold NaN.
    """
    vs, us = np.mgrid[0 : cam.height, 0 : cam.width].astype(np.float64)
    below = vs > cam.c_y + EPS_V
    dv = np.where(below, vs - cam.c_y, 1.0)
    x = np.where(below, cam.f_y * cam.h_cam / dv, np.nan)
    y = np.where(below, -(us - cam.c_x) * cam.f_y * cam.h_cam / (cam.f_x * dv), np.nan)
    xy = np.stack([x, y], axis=-1)
    below.setflags(write=False)
    xy.setflags(write=False)
    return below, xy


def column_bearings(cam: CameraModel) -> NDArray[np.float64]:
    """Ground bearing of each image column in the robot frame."""
    us = np.arange(cam.width, dtype=np.float64)
    return np.arctan2(-(us - cam.c_x), cam.f_x)


def _cross(ax, ay, bx, by):  # type: ignore[no-untyped-def]
    return ax * by - ay * bx


def _inside_convex(xy: NDArray[np.float64], vertices: NDArray[np.float64]) -> NDArray[np.bool_]:
    """Closed point-in-polygon test for a counter-clockwise convex polygon."""
    inside = np.ones(xy.shape[:-1], dtype=bool)
    n = vertices.shape[0]
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        side = _cross(b[0] - a[0], b[1] - a[1], xy[..., 0] - a[0], xy[..., 1] - a[1])
        inside &= side >= 0.0
    return inside


def _inside_obstacle(xy: NDArray[np.float64], obs_rf: tuple[str, NDArray[np.float64], float]) -> NDArray[np.bool_]:
    kind, geom, radius = obs_rf
    if kind == "circle":
        dx = xy[..., 0] - geom[0]
        dy = xy[..., 1] - geom[1]
        return dx * dx + dy * dy <= radius * radius
    return _inside_convex(xy, geom)


def _to_robot_frame(
    obstacle: CircleObstacle | PolygonObstacle, pose: Pose2D
) -> tuple[str, NDArray[np.float64], float]:
    if isinstance(obstacle, CircleObstacle):
        center = world_to_robot_array(pose, np.asarray(obstacle.center, dtype=np.float64))
        return "circle", center, obstacle.radius
    vertices = world_to_robot_array(pose, np.asarray(obstacle.vertices, dtype=np.float64))
    return "polygon", vertices, 0.0


def _ray_hits(
    directions: NDArray[np.float64], obs_rf: tuple[str, NDArray[np.float64], float]
) -> NDArray[np.float64]:
    """First-hit range from the robot origin along each unit direction (inf on a miss)."""
    kind, geom, radius = obs_rf
    hits = np.full(directions.shape[0], np.inf)
    if kind == "circle":
        b = directions @ geom
        c = float(geom @ geom) - radius * radius
        disc = b * b - c
        ok = disc >= 0.0
        root = np.sqrt(np.where(ok, disc, 0.0))
        near = b - root
        far = b + root
        if c <= 0.0:
            return np.zeros(directions.shape[0])
        hits = np.where(ok & (near >= 0.0), near, hits)
        hits = np.where(ok & (near < 0.0) & (far >= 0.0), 0.0, hits)
        return hits
    if bool(_inside_convex(np.zeros(2), geom)):
        return np.zeros(directions.shape[0])
    n = geom.shape[0]
    dx = directions[:, 0]
    dy = directions[:, 1]
    for i in range(n):
        a = geom[i]
        e = geom[(i + 1) % n] - a
        denom = _cross(dx, dy, e[0], e[1])
        safe = np.where(denom == 0.0, 1.0, denom)
        t = _cross(a[0], a[1], e[0], e[1]) / safe
        s = _cross(a[0], a[1], dx, dy) / safe
        ok = (denom != 0.0) & (t >= 0.0) & (s >= 0.0) & (s <= 1.0)
        hits = np.where(ok, np.minimum(hits, t), hits)
    return hits


def render_traversability_mask(
    world: WorldModel, robot: SimRobot, occlusion: bool = False
) -> TraversabilityMask:
    """
    A pixel is traversable iff it lies below the horizon and its ground point is
    inside the bounds and outside every obstacle footprint. With `occlusion`,
    obstacles also hide the ground behind them along each column's bearing.
    """
    cam = robot.cam
    below, xy = ground_grid(cam)
    free = below.copy()
    corners = world_to_robot_array(robot.pose, np.asarray(world.bounds.corners, dtype=np.float64))
    free &= _inside_convex(xy, corners)

    shapes = [_to_robot_frame(obs, robot.pose) for obs in world.obstacles]
    for shape in shapes:
        free &= ~_inside_obstacle(xy, shape)

    if occlusion and shapes:
        bearings = column_bearings(cam)
        directions = np.stack([np.cos(bearings), np.sin(bearings)], axis=-1)
        first_hit = np.full(cam.width, np.inf)
        for shape in shapes:
            first_hit = np.minimum(first_hit, _ray_hits(directions, shape))
        ranges = np.hypot(xy[..., 0], xy[..., 1])
        free &= ranges < first_hit[None, :]

    return TraversabilityMask(free)


# ── Collisions ───────────────────────────────────────────────────────────────


def _polygon_clearance(p: NDArray[np.float64], vertices: NDArray[np.float64]) -> tuple[float, NDArray[np.float64]]:
    """Signed distance from the polygon boundary (negative inside) and the outward unit normal."""
    n = vertices.shape[0]
    best_d = math.inf
    best_normal = np.array([1.0, 0.0])
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        e = b - a
        t = float(np.clip((p - a) @ e / (e @ e), 0.0, 1.0))
        closest = a + t * e
        d = float(np.hypot(*(p - closest)))
        if d < best_d:
            best_d = d
            if d > 0.0:
                best_normal = (p - closest) / d
            else:
                best_normal = np.array([e[1], -e[0]]) / math.hypot(e[0], e[1])
    if bool(_inside_convex(p, vertices)):
        # Inside: push out through the nearest edge.
        return -best_d, -best_normal if best_d > 0.0 else best_normal
    return best_d, best_normal


def obstacle_clearance(
    obstacle: CircleObstacle | PolygonObstacle, position: tuple[float, float]
) -> tuple[float, tuple[float, float]]:
    p = np.asarray(position, dtype=np.float64)
    if isinstance(obstacle, CircleObstacle):
        offset = p - np.asarray(obstacle.center)
        d = float(np.hypot(*offset))
        normal = offset / d if d > 0.0 else np.array([1.0, 0.0])
        return d - obstacle.radius, (float(normal[0]), float(normal[1]))
    clearance, normal = _polygon_clearance(p, np.asarray(obstacle.vertices, dtype=np.float64))
    return clearance, (float(normal[0]), float(normal[1]))


def check_collision(world: WorldModel, position: tuple[float, float]) -> Collision | None:
    """
    Closed disk test against every obstacle (lowest id first), then against the
    world boundary (id −1).
    """
    limit = world.robot_radius + CONTACT_TOL
    for i, obs in enumerate(world.obstacles):
        clearance, normal = obstacle_clearance(obs, position)
        if clearance <= limit:
            return Collision(obstacle_id=i, normal=normal, clearance=clearance)

    x, y = position
    b = world.bounds
    walls = [
        (x - b.x_min, (1.0, 0.0)),
        (b.x_max - x, (-1.0, 0.0)),
        (y - b.y_min, (0.0, 1.0)),
        (b.y_max - y, (0.0, -1.0)),
    ]
    clearance, normal = min(walls, key=lambda w: w[0])
    if clearance <= limit:
        return Collision(obstacle_id=BOUNDARY_ID, normal=normal, clearance=clearance)
    return None


def push_out(world: WorldModel, pose: Pose2D, collision: Collision) -> Pose2D:
    """Move the robot along the contact normal until it clears the surface by 2·robot_radius."""
    shift = world.robot_radius - collision.clearance + 2.0 * world.robot_radius
    return Pose2D(
        x=pose.x + collision.normal[0] * shift,
        y=pose.y + collision.normal[1] * shift,
        theta=pose.theta,
    )


# ── Visibility ───────────────────────────────────────────────────────────────


def _boundary_samples(world: WorldModel, obstacle_id: int, position: NDArray[np.float64]) -> NDArray[np.float64]:
    if obstacle_id == BOUNDARY_ID:
        b = world.bounds
        x = float(np.clip(position[0], b.x_min, b.x_max))
        y = float(np.clip(position[1], b.y_min, b.y_max))
        candidates = [(b.x_min, y), (b.x_max, y), (x, b.y_min), (x, b.y_max)]
        return np.asarray(
            [min(candidates, key=lambda c: math.hypot(c[0] - position[0], c[1] - position[1]))]
        )
    obstacle = world.obstacles[obstacle_id]
    if isinstance(obstacle, CircleObstacle):
        center = np.asarray(obstacle.center, dtype=np.float64)
        angles = np.linspace(0.0, 2.0 * math.pi, CIRCLE_SAMPLES, endpoint=False)
        ring = center + obstacle.radius * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        offset = position - center
        d = float(np.hypot(*offset))
        nearest = center + obstacle.radius * (offset / d if d > 0.0 else np.array([1.0, 0.0]))
        return np.vstack([ring, nearest])
    vertices = np.asarray(obstacle.vertices, dtype=np.float64)
    points = [vertices]
    for i in range(vertices.shape[0]):
        a = vertices[i]
        b = vertices[(i + 1) % vertices.shape[0]]
        count = max(int(math.ceil(float(np.hypot(*(b - a))) / EDGE_SAMPLE_STEP)), 1)
        t = np.arange(1, count)[:, None] / count
        points.append(a + t * (b - a))
    clearance, normal = _polygon_clearance(position, vertices)
    points.append((position - clearance * np.asarray(normal))[None, :])
    return np.vstack(points)


def is_obstacle_visible(world: WorldModel, robot: SimRobot, obstacle_id: int) -> bool:
    """
    True iff a boundary point of the obstacle lies inside the closed horizontal
    field of view and within fov_range. Occlusion between obstacles is ignored.
    """
    position = np.array([robot.pose.x, robot.pose.y])
    points = world_to_robot_array(robot.pose, _boundary_samples(world, obstacle_id, position))
    ranges = np.hypot(points[:, 0], points[:, 1])
    bearings = np.abs(np.arctan2(points[:, 1], points[:, 0]))
    in_view = (bearings <= robot.cam.half_fov + CONTACT_TOL) & (ranges <= world.fov_range)
    return bool(np.any(in_view))


# ── Localization ─────────────────────────────────────────────────────────────


def oracle_localize(
    world: WorldModel,
    robot: SimRobot,
    graph: TopoGraph,
    sigma_pos: float = 0.0,
    rng: np.random.Generator | None = None,
    scale: float = 1.0,
) -> int:
    """
    Nearest graph node to the noised true position. Noise is metric; the
    position is then expressed in the graph's scale-free frame.
    """
    position = np.array([robot.pose.x, robot.pose.y])
    if sigma_pos > 0.0:
        if rng is None:
            raise ValueError("sigma_pos > 0 requires an rng")
        position = position + rng.normal(0.0, sigma_pos, size=2)
    return localize(graph, position=(float(position[0] * scale), float(position[1] * scale)))


def distance_to_graph(graph: TopoGraph, pose: Pose2D, scale: float = 1.0) -> float:
    """Metric distance from the robot to its nearest graph node."""
    metric = graph.positions / scale
    return float(np.min(np.hypot(metric[:, 0] - pose.x, metric[:, 1] - pose.y)))
