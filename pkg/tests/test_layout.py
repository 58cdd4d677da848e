import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angres.families import ParameterError, build_G, build_frame, build_Htilde
from angres.graphs import verify_planar_3tree
from angres.layout import (
    FAN_RESOLUTION_FLOOR,
    HTILDE1_RESOLUTION_FLOOR,
    LayoutConfig,
    layout_frame_fan,
    layout_htilde1,
    layout_nested,
    layout_seed_any,
    outer_triangle_coords,
)
from angres.metrics import angular_resolution, validate_drawing


class TestConfig:
    def test_defaults_valid(self):
        LayoutConfig().validate()

    def test_bad_apex(self):
        with pytest.raises(ParameterError):
            LayoutConfig(apex_angle=4.0).validate()

    def test_bad_ratio(self):
        with pytest.raises(ParameterError):
            LayoutConfig(ring_ratio=0.9).validate()


class TestFrameFan:
    @given(st.integers(1, 32))
    @settings(max_examples=32, deadline=None)
    def test_valid_and_floor(self, d):
        fam, coords = layout_frame_fan(d)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []
        res = angular_resolution(fam.graph, coords).resolution
        assert res * d >= FAN_RESOLUTION_FLOOR

    def test_trivial_upper_bound_at_root(self):
        # degree-2d root: resolution can be at most 2*pi/(2d)
        for d in (2, 5, 11):
            fam, coords = layout_frame_fan(d)
            res = angular_resolution(fam.graph, coords).resolution
            assert res <= 2 * math.pi / (2 * d)

    def test_custom_config(self):
        fam, coords = layout_frame_fan(4, LayoutConfig(apex_angle=math.pi / 4, ring_ratio=3.0))
        assert validate_drawing(fam.graph, fam.embedding, coords) == []

    def test_deterministic(self):
        _, a = layout_frame_fan(6)
        _, b = layout_frame_fan(6)
        assert np.array_equal(a, b)


class TestHtilde1:
    @given(st.integers(1, 12))
    @settings(max_examples=12, deadline=None)
    def test_valid_and_floor(self, d):
        fam, coords = layout_htilde1(d)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []
        res = angular_resolution(fam.graph, coords).resolution
        assert res * d >= HTILDE1_RESOLUTION_FLOOR

    def test_d2_graph_size(self):
        fam, coords = layout_htilde1(2)
        assert fam.graph.n == 43
        assert coords.shape == (43, 2)

    def test_outer_is_equilateral(self):
        fam, coords = layout_htilde1(3)
        o = coords[list(fam.embedding.outer_face)]
        sides = [np.linalg.norm(o[i] - o[(i + 1) % 3]) for i in range(3)]
        assert sides[0] == pytest.approx(sides[1]) == pytest.approx(sides[2])

    def test_factor_two_band_on_doublings(self):
        vals = {}
        for d in (2, 4, 8, 16):
            fam, coords = layout_htilde1(d)
            vals[d] = angular_resolution(fam.graph, coords).resolution * d
        assert max(vals.values()) / min(vals.values()) < 2.0


class TestNested:
    def test_matches_htilde1_at_depth_one(self):
        fam, coords = layout_htilde1(5)
        assert np.array_equal(coords, layout_nested(fam))

    def test_frame_top_level_is_the_fan(self):
        fam, coords = layout_frame_fan(6)
        assert np.allclose(layout_nested(fam), coords)

    @pytest.mark.parametrize("c,d", [(2, 4), (2, 16), (3, 4), (3, 8)])
    def test_deep_families_valid(self, c, d):
        fam = build_Htilde(c, d)
        coords = layout_nested(fam)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []
        assert angular_resolution(fam.graph, coords).resolution > 0.0

    def test_deep_G_valid(self):
        fam = build_G(3, 6)
        coords = layout_nested(fam)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []


class TestSeedAny:
    def test_k4_centroid(self):
        fam = build_Htilde(1, 1)
        seq = verify_planar_3tree(fam.graph, keep=fam.embedding.outer_face)
        coords = layout_seed_any(fam.graph, fam.embedding, seq)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []

    def test_htilde24_valid(self):
        fam = build_Htilde(2, 4)
        coords = layout_seed_any(fam.graph, fam.embedding)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []

    def test_deterministic(self):
        fam = build_frame(5)
        a = layout_seed_any(fam.graph, fam.embedding)
        b = layout_seed_any(fam.graph, fam.embedding)
        assert np.array_equal(a, b)

    def test_no_coincident_points(self):
        fam = build_Htilde(1, 3)
        coords = layout_seed_any(fam.graph, fam.embedding)
        n = fam.graph.n
        d2 = np.sum((coords[:, None, :] - coords[None, :, :]) ** 2, axis=2)
        d2[np.arange(n), np.arange(n)] = np.inf
        assert d2.min() > 0.0

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=15, deadline=None)
    def test_randomized_replay_always_valid(self, seed):
        fam = build_Htilde(1, 2)
        rng = np.random.default_rng(seed)
        coords = layout_seed_any(fam.graph, fam.embedding, rng=rng)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []

    def test_custom_outer_coords(self):
        fam = build_frame(3)
        outer = 2.5 * outer_triangle_coords()
        coords = layout_seed_any(fam.graph, fam.embedding, outer_coords=outer)
        assert validate_drawing(fam.graph, fam.embedding, coords) == []
        np.testing.assert_allclose(coords[list(fam.embedding.outer_face)], outer)
