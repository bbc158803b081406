"""
Subgoal pixel selection.

A ground ray leaves the robot origin at heading α, is sampled in range and
projected into the image. The traced segment starts at the nearest traversable
ray pixel and ends at the last traversable pixel before the first blocker (or
the horizon). The subgoal sits at a fixed fraction of that segment. When no ray
pixel is traversable the traversable pixel closest to the projected ray line is
used instead.
"""
import logging
import math

import numpy as np
from numpy.typing import NDArray

from pixelnav.core.exceptions import ConfigError, NoTraversableRegion
from pixelnav.geometry.models import PixelPoint, Pose2D
from pixelnav.geometry.schemas import CameraModel
from pixelnav.geometry.service import EPS_V, project_ground_array, round_half_up, wrap_angle
from pixelnav.subgoal.models import SubgoalMode, SubgoalPixel, YawEstimate
from pixelnav.subgoal.schemas import SubgoalConfig
from pixelnav.topograph.models import TopoNode
from pixelnav.traversability.models import TraversabilityMask

logger = logging.getLogger(__name__)

MAX_RAY_HEADING = math.pi / 2 - 1e-3


def _round_half_up_array(a: NDArray[np.float64]) -> NDArray[np.int64]:
    return np.floor(a + 0.5).astype(np.int64)


def ray_samples(cam: CameraModel, alpha: float, cfg: SubgoalConfig) -> NDArray[np.float64]:
    """Real-valued projections of the ground ray samples, near to far."""
    heading = min(max(alpha, -MAX_RAY_HEADING), MAX_RAY_HEADING)
    count = int(math.floor((cfg.d_max - cfg.d_min) / cfg.d_step + 1e-9)) + 1
    d = cfg.d_min + cfg.d_step * np.arange(count)
    ground = np.stack([d * math.cos(heading), d * math.sin(heading)], axis=-1)
    return project_ground_array(cam, ground)


def _same_side_outside(cam: CameraModel, a: NDArray[np.float64], b: NDArray[np.float64]) -> bool:
    return bool(
        (a[0] < -0.5 and b[0] < -0.5)
        or (a[0] >= cam.width - 0.5 and b[0] >= cam.width - 0.5)
        or (a[1] >= cam.height - 0.5 and b[1] >= cam.height - 0.5)
    )


def ray_pixels(cam: CameraModel, alpha: float, cfg: SubgoalConfig) -> NDArray[np.int64]:
    """
    Integer ray pixels inside the image and below the horizon, ordered near to
    far, rasterised densely between consecutive range samples.
    """
    samples = ray_samples(cam, alpha, cfg)
    chain: list[NDArray[np.float64]] = [samples[:1]]
    for a, b in zip(samples[:-1], samples[1:]):
        if _same_side_outside(cam, a, b):
            chain.append(b[None, :])
            continue
        steps = int(math.ceil(max(abs(b[0] - a[0]), abs(b[1] - a[1]))))
        if steps > 1:
            t = np.arange(1, steps)[:, None] / steps
            chain.append(a + t * (b - a))
        chain.append(b[None, :])
    pixels = _round_half_up_array(np.concatenate(chain))
    keep = (
        (pixels[:, 0] >= 0)
        & (pixels[:, 0] < cam.width)
        & (pixels[:, 1] >= 0)
        & (pixels[:, 1] < cam.height)
        & (pixels[:, 1] > cam.c_y + EPS_V)
    )
    pixels = pixels[keep]
    if pixels.shape[0] == 0:
        return pixels
    changed = np.any(pixels[1:] != pixels[:-1], axis=1)
    return pixels[np.concatenate([[True], changed])]


def _nearest_traversable(mask: TraversabilityMask, u: int, v: int) -> tuple[int, int]:
    if 0 <= u < mask.width and 0 <= v < mask.height and mask.bits[v, u]:
        return u, v
    vs, us = np.nonzero(mask.bits)
    d2 = (us - u) ** 2 + (vs - v) ** 2
    best = np.lexsort((us, vs, d2))[0]
    return int(us[best]), int(vs[best])


def _closest_to_line(
    mask: TraversabilityMask, a: NDArray[np.float64], b: NDArray[np.float64]
) -> tuple[int, int]:
    vs, us = np.nonzero(mask.bits)
    direction = b - a
    norm = math.hypot(direction[0], direction[1])
    if norm == 0.0:
        dist = np.hypot(us - a[0], vs - a[1])
    else:
        dist = np.abs((us - a[0]) * direction[1] - (vs - a[1]) * direction[0]) / norm
    best = np.lexsort((us, vs, dist))[0]
    return int(us[best]), int(vs[best])


def select_subgoal_pixel(
    mask: TraversabilityMask,
    cam: CameraModel,
    alpha: float,
    cfg: SubgoalConfig | None = None,
) -> SubgoalPixel:
    cfg = cfg or SubgoalConfig()
    if (mask.width, mask.height) != (cam.width, cam.height):
        raise ConfigError(
            f"mask is {mask.width}x{mask.height} but camera is {cam.width}x{cam.height}"
        )
    if mask.traversable_count == 0:
        raise NoTraversableRegion()

    pixels = ray_pixels(cam, alpha, cfg)
    if pixels.shape[0] > 0:
        free = mask.bits[pixels[:, 1], pixels[:, 0]]
        if np.any(free):
            start = int(np.argmax(free))
            blocked = np.nonzero(~free[start:])[0]
            end = start + int(blocked[0]) - 1 if blocked.size else pixels.shape[0] - 1
            near = pixels[start].astype(np.float64)
            far = pixels[end].astype(np.float64)
            target = near + cfg.fraction * (far - near)
            u, v = _nearest_traversable(
                mask, round_half_up(float(target[0])), round_half_up(float(target[1]))
            )
            return SubgoalPixel(p=PixelPoint(u=float(u), v=float(v)), mode=SubgoalMode.ON_RAY)

    samples = ray_samples(cam, alpha, cfg)
    u, v = _closest_to_line(mask, samples[0], samples[-1])
    logger.warning("Ray at alpha=%.3f crosses no traversable pixel; fallback to (%d, %d)", alpha, u, v)
    return SubgoalPixel(p=PixelPoint(u=float(u), v=float(v)), mode=SubgoalMode.FALLBACK_CLOSEST)


def oracle_yaw(
    robot_pose: Pose2D,
    subgoal_node: TopoNode,
    sigma: float = 0.0,
    rng: np.random.Generator | None = None,
) -> YawEstimate:
    alpha = wrap_angle(subgoal_node.pose.phi - robot_pose.theta)
    if sigma > 0.0:
        if rng is None:
            raise ValueError("sigma > 0 requires an rng")
        alpha = wrap_angle(alpha + float(rng.normal(0.0, sigma)))
    return YawEstimate(alpha=alpha, valid=True)
