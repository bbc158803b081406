"""Tests for subgoal pixel selection and the oracle yaw estimate."""
import math

import numpy as np
import pytest

from pixelnav.core.exceptions import ConfigError, NoTraversableRegion
from pixelnav.geometry.models import Pose2D
from pixelnav.geometry.schemas import CameraModel
from pixelnav.subgoal.models import SubgoalMode
from pixelnav.subgoal.schemas import SubgoalConfig
from pixelnav.subgoal.service import oracle_yaw, ray_pixels, select_subgoal_pixel
from pixelnav.topograph.models import PoseSample, TopoNode
from pixelnav.traversability.models import TraversabilityMask


def _floor(cam: CameraModel) -> np.ndarray:
    bits = np.zeros((cam.height, cam.width), dtype=bool)
    bits[int(cam.c_y) + 1 :, :] = True
    return bits


def _random_blocks(rng: np.random.Generator, cam: CameraModel, count: int) -> np.ndarray:
    """Floor with rectangular holes; the bottom row is always kept free."""
    bits = _floor(cam)
    for _ in range(count):
        u0 = int(rng.integers(0, cam.width - 10))
        v0 = int(rng.integers(int(cam.c_y), cam.height - 12))
        bits[v0 : v0 + int(rng.integers(2, 10)), u0 : u0 + int(rng.integers(2, 40))] = False
    bits[cam.height - 1, :] = True
    return bits


def _node(phi: float) -> TopoNode:
    return TopoNode(id=0, pose=PoseSample(z=(0.0, 0.0), phi=phi))


class TestSelectSubgoalPixel:
    def test_open_floor_straight_ahead(self, hand_cam):
        mask = TraversabilityMask(_floor(hand_cam))
        sg = select_subgoal_pixel(mask, hand_cam, 0.0, SubgoalConfig(d_max=100.0))
        assert sg.mode is SubgoalMode.ON_RAY
        assert (sg.p.u, sg.p.v) == (160.0, 160.0)

    def test_left_half_falls_back_to_boundary_column(self, hand_cam):
        bits = _floor(hand_cam)
        bits[:, 160:] = False
        sg = select_subgoal_pixel(TraversabilityMask(bits), hand_cam, 0.0)
        assert sg.mode is SubgoalMode.FALLBACK_CLOSEST
        assert (sg.p.u, sg.p.v) == (159.0, 121.0)

    def test_empty_mask(self, cam):
        with pytest.raises(NoTraversableRegion):
            select_subgoal_pixel(TraversabilityMask.full(cam.width, cam.height, False), cam, 0.0)

    def test_mask_size_must_match_camera(self, cam):
        with pytest.raises(ConfigError):
            select_subgoal_pixel(TraversabilityMask.full(10, 10), cam, 0.0)

    def test_stops_before_first_blocker(self, cam):
        bits = _floor(cam)
        bits[180:190, 150:170] = False
        sg = select_subgoal_pixel(TraversabilityMask(bits), cam, 0.0)
        assert sg.mode is SubgoalMode.ON_RAY
        assert sg.p.v >= 190
        assert bits[int(sg.p.v), int(sg.p.u)]

    def test_ray_is_a_single_image_column(self, cam):
        pixels = ray_pixels(cam, 0.3, SubgoalConfig())
        assert len(set(pixels[:, 0].tolist())) == 1
        assert pixels[0, 1] == cam.height - 1
        assert np.all(np.diff(pixels[:, 1]) == -1)

    def test_symmetric_masks_select_center_column(self, cam):
        rng = np.random.default_rng(31)
        for _ in range(100):
            half = _random_blocks(rng, cam, int(rng.integers(1, 8)))[:, : cam.width // 2]
            mask = TraversabilityMask(np.hstack([half, half[:, ::-1]]))
            sg = select_subgoal_pixel(mask, cam, 0.0)
            assert abs(sg.p.u - cam.c_x) <= 1
            assert mask.bits[int(sg.p.v), int(sg.p.u)]

    def test_mirrored_mask_and_yaw_mirror_the_pixel(self):
        # Principal point on the pixel grid's mirror axis.
        cam = CameraModel(c_x=159.5)
        rng = np.random.default_rng(37)
        for _ in range(100):
            mask = TraversabilityMask(_random_blocks(rng, cam, int(rng.integers(1, 8))))
            alpha = float(rng.uniform(-0.6, 0.6))
            a = select_subgoal_pixel(mask, cam, alpha)
            b = select_subgoal_pixel(mask.mirrored(), cam, -alpha)
            assert abs(b.p.u - (cam.width - 1 - a.p.u)) <= 1
            assert abs(b.p.v - a.p.v) <= 1


class TestOracleYaw:
    def test_relative_rotation(self):
        assert oracle_yaw(Pose2D(0, 0, 0), _node(math.pi / 4)).alpha == pytest.approx(math.pi / 4)

    def test_aligned_headings(self):
        assert oracle_yaw(Pose2D(3, 1, 0.7), _node(0.7)).alpha == 0.0

    def test_wraps_across_pi(self):
        yaw = oracle_yaw(Pose2D(0, 0, -3 * math.pi / 4), _node(3 * math.pi / 4))
        assert yaw.alpha == pytest.approx(-math.pi / 2)
        assert yaw.valid

    def test_noise_is_seeded(self):
        a = oracle_yaw(Pose2D(0, 0, 0), _node(0.0), sigma=0.1, rng=np.random.default_rng(1))
        b = oracle_yaw(Pose2D(0, 0, 0), _node(0.0), sigma=0.1, rng=np.random.default_rng(1))
        assert a == b
        assert a.alpha != 0.0

    def test_noise_requires_rng(self):
        with pytest.raises(ValueError):
            oracle_yaw(Pose2D(0, 0, 0), _node(0.0), sigma=0.1)
