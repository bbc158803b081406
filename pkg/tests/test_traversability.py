"""Tests for mask thresholding, contour extraction, obstacle sampling and PGM files."""
import numpy as np
import pytest

from pixelnav.traversability.io import read_mask_pgm, write_mask_pgm, write_overlay_pgm
from pixelnav.traversability.models import TraversabilityMask
from pixelnav.traversability.service import (
    binarize_probabilities,
    boundary_pixels,
    extract_contours,
    obstacle_ground_points,
    sample_obstacle_points,
)


def _contour_pixels(mask: TraversabilityMask) -> set[tuple[int, int]]:
    return {(int(u), int(v)) for c in extract_contours(mask) for u, v in c}


def _scan_boundary(bits: np.ndarray) -> set[tuple[int, int]]:
    """Traversable pixels with a non-traversable or off-image 4-neighbour."""
    h, w = bits.shape
    found = set()
    for v in range(h):
        for u in range(w):
            if not bits[v, u]:
                continue
            for du, dv in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nu, nv = u + du, v + dv
                if not (0 <= nu < w and 0 <= nv < h) or not bits[nv, nu]:
                    found.add((u, v))
                    break
    return found


class TestBinarize:
    def test_threshold_is_inclusive(self):
        prob = np.array([[0.94, 0.95], [0.96, 1.0]])
        mask = binarize_probabilities(prob)
        assert mask.bits.tolist() == [[False, True], [True, True]]

    def test_rejects_threshold_outside_unit_interval(self):
        with pytest.raises(ValueError):
            binarize_probabilities(np.zeros((2, 2)), threshold=1.5)


class TestMask:
    def test_lookup_rounds_half_up(self):
        bits = np.zeros((3, 3), dtype=bool)
        bits[2, 2] = True
        mask = TraversabilityMask(bits)
        assert mask.is_traversable(1.5, 1.5)
        assert not mask.is_traversable(1.49, 1.5)
        assert not mask.is_traversable(3.0, 2.0)

    def test_bits_are_read_only(self):
        mask = TraversabilityMask.full(4, 3)
        with pytest.raises(ValueError):
            mask.bits[0, 0] = False


class TestExtractContours:
    def test_central_block(self):
        bits = np.zeros((5, 5), dtype=bool)
        bits[1:4, 1:4] = True
        contours = extract_contours(TraversabilityMask(bits))
        assert len(contours) == 1
        expected = {(u, v) for u in range(1, 4) for v in range(1, 4)} - {(2, 2)}
        assert {(int(u), int(v)) for u, v in contours[0]} == expected

    def test_all_traversable_traces_image_border(self):
        contours = extract_contours(TraversabilityMask.full(6, 4))
        assert len(contours) == 1
        pixels = {(int(u), int(v)) for u, v in contours[0]}
        assert pixels == {(u, v) for u in range(6) for v in range(4) if u in (0, 5) or v in (0, 3)}

    def test_empty_mask(self):
        assert extract_contours(TraversabilityMask.full(6, 4, value=False)) == []

    def test_hole_produces_its_own_contour(self):
        bits = np.ones((7, 7), dtype=bool)
        bits[3, 3] = False
        assert len(extract_contours(TraversabilityMask(bits))) == 2

    def test_matches_boundary_scan_on_random_masks(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            bits = rng.random((32, 32)) < rng.uniform(0.3, 0.8)
            mask = TraversabilityMask(bits)
            expected = _scan_boundary(bits)
            assert _contour_pixels(mask) == expected
            vs, us = np.nonzero(boundary_pixels(mask))
            assert set(zip(us.tolist(), vs.tolist())) == expected


class TestSampleObstaclePoints:
    def test_empty_contour_list(self, cam):
        assert sample_obstacle_points([], cam, 10).count == 0

    def test_samples_distinct_contour_pixels(self, cam):
        contour = np.array([[u, 200] for u in range(10, 50)], dtype=np.int64)
        points = sample_obstacle_points([contour], cam, n_per_contour=10, rng_seed=5)
        assert points.count == 10
        rows = {tuple(p) for p in points.points.astype(int).tolist()}
        assert len(rows) == 10
        assert rows <= {tuple(p) for p in contour.tolist()}

    def test_takes_whole_contour_when_short(self, cam):
        contour = np.array([[u, 200] for u in range(10, 15)], dtype=np.int64)
        assert sample_obstacle_points([contour], cam, n_per_contour=32).count == 5

    def test_above_horizon_is_filtered(self, cam):
        contour = np.array([[u, 100] for u in range(10, 50)], dtype=np.int64)
        assert sample_obstacle_points([contour], cam, 10).count == 0

    def test_image_frame_pixels_are_filtered(self, cam):
        contour = np.array(
            [[0, 200], [cam.width - 1, 200], [100, cam.height - 1], [100, 200]], dtype=np.int64
        )
        points = sample_obstacle_points([contour], cam, 10)
        assert points.points.tolist() == [[100.0, 200.0]]

    def test_same_seed_same_points(self, cam):
        bits = np.zeros((cam.height, cam.width), dtype=bool)
        bits[130:, 40:280] = True
        bits[180:200, 150:170] = False
        contours = extract_contours(TraversabilityMask(bits))
        a = sample_obstacle_points(contours, cam, 8, rng_seed=np.random.SeedSequence(3, spawn_key=(4,)))
        b = sample_obstacle_points(contours, cam, 8, rng_seed=np.random.SeedSequence(3, spawn_key=(4,)))
        assert np.array_equal(a.points, b.points)

    def test_every_sample_backprojects(self, cam):
        bits = np.zeros((cam.height, cam.width), dtype=bool)
        bits[121:, :] = True
        bits[150:170, 100:140] = False
        points = sample_obstacle_points(extract_contours(TraversabilityMask(bits)), cam, 64)
        ground = obstacle_ground_points(points, cam)
        assert ground.shape == (points.count, 2)
        assert np.all(ground[:, 0] > 0)


class TestPgm:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        mask = TraversabilityMask(rng.random((24, 32)) < 0.5)
        path = write_mask_pgm(mask, tmp_path / "mask.pgm")
        assert path.read_bytes().startswith(b"P5")
        assert np.array_equal(read_mask_pgm(path).bits, mask.bits)

    def test_overlay_marks_pixel(self, tmp_path):
        mask = TraversabilityMask.full(32, 24)
        path = write_overlay_pgm(mask, (10, 12), tmp_path / "overlay.pgm")
        img = read_mask_pgm(path)
        assert img.width == 32 and img.height == 24
