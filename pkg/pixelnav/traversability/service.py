"""
Traversability masks → obstacle evidence for the collision cost.

Contours are Suzuki border-following chains (OpenCV) over the traversable
pixels. The mask is padded with one non-traversable pixel so that the image
border is treated as a boundary, and both outer and hole borders are kept:
a hole inside the floor is an obstacle.
"""
import logging

import cv2
import numpy as np
from numpy.typing import NDArray

from pixelnav.geometry.schemas import CameraModel
from pixelnav.geometry.service import EPS_V, backproject_array
from pixelnav.traversability.models import ObstaclePointSet, TraversabilityMask

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.95
DEFAULT_POINTS_PER_CONTOUR = 32

Contour = NDArray[np.int64]  # (L, 2) ordered (u, v) chain


def binarize_probabilities(prob: NDArray[np.floating], threshold: float = DEFAULT_THRESHOLD) -> TraversabilityMask:
    """Threshold a per-pixel traversability probability map."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    return TraversabilityMask(np.asarray(prob) >= threshold)


def extract_contours(mask: TraversabilityMask) -> list[Contour]:
    if mask.traversable_count == 0:
        return []
    img = mask.bits.astype(np.uint8)
    padded = cv2.copyMakeBorder(img, 1, 1, 1, 1, cv2.BORDER_CONSTANT, value=0)
    found, _ = cv2.findContours(
        padded, cv2.RETR_LIST, cv2.CHAIN_APPROX_NONE, offset=(-1, -1)
    )
    return [c.reshape(-1, 2).astype(np.int64) for c in found]


def boundary_pixels(mask: TraversabilityMask) -> NDArray[np.bool_]:
    """Traversable pixels with a non-traversable or off-image 4-neighbour."""
    bits = mask.bits
    padded = np.pad(bits, 1, constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    return bits & ~interior


def _eligible(contour: Contour, cam: CameraModel) -> Contour:
    u = contour[:, 0]
    v = contour[:, 1]
    keep = (
        (v > cam.c_y + EPS_V)
        & (v != cam.height - 1)
        & (u != 0)
        & (u != cam.width - 1)
    )
    kept = contour[keep]
    if kept.shape[0] == 0:
        return kept
    return np.unique(kept, axis=0)


def sample_obstacle_points(
    contours: list[Contour],
    cam: CameraModel,
    n_per_contour: int = DEFAULT_POINTS_PER_CONTOUR,
    rng_seed: int | np.random.SeedSequence = 0,
) -> ObstaclePointSet:
    """
    Sample up to n_per_contour distinct pixels per contour, uniformly without
    replacement, after dropping above-horizon pixels and the image's bottom row
    and side columns (those bound the field of view, not obstacles).
    """
    if n_per_contour < 1:
        raise ValueError(f"n_per_contour must be >= 1, got {n_per_contour}")
    rng = np.random.default_rng(rng_seed)
    chunks: list[NDArray[np.int64]] = []
    for contour in contours:
        pixels = _eligible(contour, cam)
        if pixels.shape[0] == 0:
            continue
        take = min(n_per_contour, pixels.shape[0])
        idx = rng.choice(pixels.shape[0], size=take, replace=False)
        chunks.append(pixels[np.sort(idx)])
    if not chunks:
        return ObstaclePointSet()
    return ObstaclePointSet(points=np.concatenate(chunks).astype(np.float64))


def obstacle_ground_points(points: ObstaclePointSet, cam: CameraModel) -> NDArray[np.float64]:
    """Backproject sampled obstacle pixels once per control cycle."""
    if points.count == 0:
        return np.zeros((0, 2))
    return backproject_array(cam, points.points)
