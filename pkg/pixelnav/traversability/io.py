"""Binary PGM (P5) mask files: 255 = traversable, 0 = non-traversable."""
from pathlib import Path

import cv2
import numpy as np

from pixelnav.core.exceptions import AppError
from pixelnav.traversability.models import TraversabilityMask


def write_mask_pgm(mask: TraversabilityMask, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    img = np.where(mask.bits, 255, 0).astype(np.uint8)
    if not cv2.imwrite(str(path), img, [cv2.IMWRITE_PXM_BINARY, 1]):
        raise AppError(f"Could not write mask file: {path}")
    return path


def read_mask_pgm(path: str | Path) -> TraversabilityMask:
    img = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
    if img is None:
        raise AppError(f"Could not read mask file: {path}")
    return TraversabilityMask(img >= 128)


def write_overlay_pgm(
    mask: TraversabilityMask,
    pixel: tuple[int, int] | None,
    path: str | Path,
    marker_radius: int = 3,
) -> Path:
    """Debug image: mask in grey levels (traversable = 200) with the subgoal pixel drawn white."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    img = np.where(mask.bits, 200, 40).astype(np.uint8)
    if pixel is not None:
        cv2.circle(img, pixel, marker_radius, 255, thickness=-1)
    if not cv2.imwrite(str(path), img, [cv2.IMWRITE_PXM_BINARY, 1]):
        raise AppError(f"Could not write overlay file: {path}")
    return path
