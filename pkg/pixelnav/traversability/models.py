from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from pixelnav.geometry.service import round_half_up


@dataclass(frozen=True)
class TraversabilityMask:
    """Binary per-pixel traversability, indexed bits[v, u]; True = traversable."""
    bits: NDArray[np.bool_]

    def __post_init__(self) -> None:
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValueError(f"Mask must be 2-D, got shape {bits.shape}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def traversable_count(self) -> int:
        return int(np.count_nonzero(self.bits))

    def is_traversable(self, u: float, v: float) -> bool:
        """Lookup at a real-valued pixel, rounded half-up; off-image pixels are not traversable."""
        iu = round_half_up(u)
        iv = round_half_up(v)
        if not (0 <= iu < self.width and 0 <= iv < self.height):
            return False
        return bool(self.bits[iv, iu])

    def mirrored(self) -> "TraversabilityMask":
        return TraversabilityMask(self.bits[:, ::-1])

    @classmethod
    def full(cls, width: int, height: int, value: bool = True) -> "TraversabilityMask":
        return cls(np.full((height, width), value, dtype=bool))


@dataclass(frozen=True)
class ObstaclePointSet:
    """Contour pixels sampled as obstacle evidence, (N, 2) array of (u, v)."""
    points: NDArray[np.float64] = field(default_factory=lambda: np.zeros((0, 2)))

    @property
    def count(self) -> int:
        return int(self.points.shape[0])
