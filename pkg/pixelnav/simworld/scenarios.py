"""Canonical desk-scale scenarios: an open corridor, and the same corridor with target obstacles."""
from pixelnav.simworld.schemas import (
    Bounds,
    CircleObstacle,
    GoalRegion,
    PolygonObstacle,
    WorldModel,
)

CORRIDOR_LENGTH = 8.0
CORRIDOR_HALF_WIDTH = 2.0


def corridor_world() -> WorldModel:
    """Straight 8 m corridor along +x, 4 m wide, robot starting at its west end."""
    return WorldModel(
        bounds=Bounds(x_min=-0.5, y_min=-CORRIDOR_HALF_WIDTH, x_max=CORRIDOR_LENGTH + 1.5, y_max=CORRIDOR_HALF_WIDTH),
        robot_radius=0.25,
        fov_range=10.0,
        start_pose=(0.5, 0.0, 0.0),
        goal_region=GoalRegion(center=(CORRIDOR_LENGTH + 0.5, 0.0), radius=0.5),
        expert_waypoints=[(0.5, 0.0), (CORRIDOR_LENGTH + 0.5, 0.0)],
    )


def side_target() -> CircleObstacle:
    """Clips the robot's body on the centre line without covering the centre ray."""
    return CircleObstacle(center=(4.0, 0.45), radius=0.35, is_target=True)


def far_side_target() -> CircleObstacle:
    return CircleObstacle(center=(6.0, -0.45), radius=0.35, is_target=True)


def blocking_wall() -> PolygonObstacle:
    """Spans the full corridor width: no traversable way past it."""
    return PolygonObstacle(
        vertices=[(4.0, -CORRIDOR_HALF_WIDTH), (4.3, -CORRIDOR_HALF_WIDTH), (4.3, CORRIDOR_HALF_WIDTH), (4.0, CORRIDOR_HALF_WIDTH)],
        is_target=True,
    )


def target_corridor_world() -> WorldModel:
    return corridor_world().with_obstacle(side_target())


def blocked_corridor_world() -> WorldModel:
    return corridor_world().with_obstacle(blocking_wall())


# Target-obstacle ablation settings. Everything else keeps the deployment defaults.
AVOIDANCE_OVERRIDES = [
    # Footprint-only masks: the target is a closed hole in the floor instead of
    # the near edge of its shadow wedge.
    "sim.occlusion=false",
    # Enough points to cover every pixel of the hole outline, not a 32-point draw.
    "traversability.n_per_contour=512",
    # Robot radius plus target radius. At 2 m both corridor walls are in range
    # from the centre line and the wall points drown out the target.
    "mppi.r_safe=0.6",
    # Goal region radius plus the lateral offset the sidestep leaves behind.
    "episode.d_goal=1.0",
]
