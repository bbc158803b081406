import math
from typing import Annotated, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from pixelnav.geometry.schemas import CameraModel


class Bounds(BaseModel):
    model_config = {"frozen": True}

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    @model_validator(mode="after")
    def validate_extent(self) -> "Bounds":
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise ValueError("bounds must have x_max > x_min and y_max > y_min")
        return self

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    @property
    def corners(self) -> list[tuple[float, float]]:
        """Counter-clockwise."""
        return [
            (self.x_min, self.y_min),
            (self.x_max, self.y_min),
            (self.x_max, self.y_max),
            (self.x_min, self.y_max),
        ]


class CircleObstacle(BaseModel):
    model_config = {"frozen": True}

    type: Literal["circle"] = "circle"
    center: tuple[float, float]
    radius: float = Field(gt=0)
    is_target: bool = False

    def outline(self, samples: int = 64) -> list[tuple[float, float]]:
        return [
            (
                self.center[0] + self.radius * math.cos(2 * math.pi * k / samples),
                self.center[1] + self.radius * math.sin(2 * math.pi * k / samples),
            )
            for k in range(samples)
        ]


class PolygonObstacle(BaseModel):
    """Convex polygon; vertices are stored counter-clockwise."""

    model_config = {"frozen": True}

    type: Literal["polygon"] = "polygon"
    vertices: list[tuple[float, float]] = Field(min_length=3)
    is_target: bool = False

    @field_validator("vertices")
    @classmethod
    def validate_convex(cls, vertices: list[tuple[float, float]]) -> list[tuple[float, float]]:
        n = len(vertices)
        area2 = sum(
            vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1]
            for i in range(n)
        )
        if area2 == 0.0:
            raise ValueError("polygon has zero area")
        if area2 < 0.0:
            vertices = list(reversed(vertices))
        for i in range(n):
            ax, ay = vertices[i]
            bx, by = vertices[(i + 1) % n]
            cx, cy = vertices[(i + 2) % n]
            if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) < 0.0:
                raise ValueError("polygon must be convex")
        return vertices

    def outline(self, samples: int = 64) -> list[tuple[float, float]]:
        return list(self.vertices)


Obstacle = Annotated[CircleObstacle | PolygonObstacle, Field(discriminator="type")]


class GoalRegion(BaseModel):
    model_config = {"frozen": True}

    center: tuple[float, float]
    radius: float = Field(default=0.5, gt=0)


class WorldModel(BaseModel):
    """Static 2D world: the simulator's metric ground truth. Obstacle ids are list indices."""

    model_config = {"frozen": True}

    bounds: Bounds
    obstacles: list[Obstacle] = Field(default_factory=list)
    robot_radius: float = Field(default=0.25, gt=0)
    fov_range: float = Field(default=10.0, gt=0)
    camera: CameraModel = Field(default_factory=CameraModel)
    start_pose: tuple[float, float, float] = (0.0, 0.0, 0.0)
    goal_region: GoalRegion | None = None
    expert_waypoints: list[tuple[float, float]] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_obstacles_in_bounds(self) -> "WorldModel":
        b = self.bounds
        for i, obs in enumerate(self.obstacles):
            if isinstance(obs, CircleObstacle):
                cx, cy = obs.center
                inside = (
                    b.x_min <= cx - obs.radius
                    and cx + obs.radius <= b.x_max
                    and b.y_min <= cy - obs.radius
                    and cy + obs.radius <= b.y_max
                )
            else:
                inside = all(b.contains(x, y) for x, y in obs.vertices)
            if not inside:
                raise ValueError(f"obstacle {i} lies outside the world bounds")
        return self

    def with_obstacle(self, obstacle: CircleObstacle | PolygonObstacle) -> "WorldModel":
        data = self.model_dump()
        data["obstacles"].append(obstacle.model_dump())
        return WorldModel.model_validate(data)

    @property
    def target_ids(self) -> list[int]:
        return [i for i, o in enumerate(self.obstacles) if o.is_target]


class SimConfig(BaseModel):
    """Simulator knobs: scale-free frame emulation, rendering and oracle noise."""

    model_config = {"frozen": True}

    scale: float = Field(default=1.7, gt=0)  # metric → scale-free frame factor
    occlusion: bool = True
    camera_height_error: float = 0.0  # meters added to h_cam on the planner side
    sigma_pos: float = Field(default=0.0, ge=0)
    expert_dt: float = Field(default=0.2, gt=0)
    expert_speed: float = Field(default=0.3, gt=0)
    expert_lookahead: float = Field(default=0.3, gt=0)
