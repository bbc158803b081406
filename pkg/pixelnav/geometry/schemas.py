import math

from pydantic import BaseModel, Field, model_validator


class CameraModel(BaseModel):
    """Pinhole camera rigidly mounted at the robot origin, optical axis level with the ground."""

    model_config = {"frozen": True}

    f_x: float = Field(default=160.0, gt=0)
    f_y: float = Field(default=160.0, gt=0)
    c_x: float = 160.0
    c_y: float = 120.0
    h_cam: float = Field(default=0.5, gt=0)
    width: int = Field(default=320, gt=0)
    height: int = Field(default=240, gt=0)

    @model_validator(mode="after")
    def validate_principal_point(self) -> "CameraModel":
        if not 0 < self.c_x < self.width:
            raise ValueError(f"c_x must lie in (0, width={self.width}), got {self.c_x}")
        if not 0 < self.c_y < self.height:
            raise ValueError(f"c_y must lie in (0, height={self.height}), got {self.c_y}")
        return self

    @property
    def diagonal(self) -> float:
        return float((self.width**2 + self.height**2) ** 0.5)

    @property
    def half_fov(self) -> float:
        """Horizontal half field of view in radians."""
        return math.atan(self.width / (2.0 * self.f_x))

    def with_height(self, h_cam: float) -> "CameraModel":
        return self.model_copy(update={"h_cam": h_cam})
