import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angres.families import build_frame
from angres.graphs import Embedding, LabeledGraph, StructureError
from angres.layout import LayoutConfig, layout_frame_fan
from angres.metrics import (
    angular_resolution,
    claim_quantities,
    frame_profile,
    read_drawing,
    signed_area,
    telescoping_product,
    validate_drawing,
    write_drawing,
)

TOL = 1e-9


def triangle_drawing():
    g = LabeledGraph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.add_edge(0, 2)
    emb = Embedding([[1, 2], [2, 0], [0, 1]], (0, 1, 2))
    coords = np.array([[0.0, 1.0], [math.sqrt(3) / 2, -0.5], [-math.sqrt(3) / 2, -0.5]])
    return g, emb, coords


class TestValidate:
    def test_equilateral_triangle_valid(self):
        g, emb, coords = triangle_drawing()
        assert validate_drawing(g, emb, coords) == []

    def test_flipped_face_detected(self):
        g, emb, coords = triangle_drawing()
        bad = coords[[0, 2, 1]]  # mirrors the drawing, outer face flips
        viols = validate_drawing(g, emb, bad)
        assert viols
        kinds = {v.kind for v in viols}
        assert "flipped-face" in kinds or "rotation-mismatch" in kinds

    def test_coincident_points_detected(self):
        g, emb, coords = triangle_drawing()
        bad = coords.copy()
        bad[1] = bad[0]
        viols = validate_drawing(g, emb, bad)
        assert any(v.kind == "coincident" for v in viols)

    def test_crossing_detected(self):
        # K4 with the interior vertex dragged outside: edges must cross
        g = LabeledGraph(4)
        for i in range(4):
            for j in range(i + 1, 4):
                g.add_edge(i, j)
        emb = Embedding([[2, 3, 1], [0, 3, 2], [1, 3, 0], [0, 2, 1]], (0, 2, 1))
        coords = np.array([[0.0, 1.0], [0.87, -0.5], [-0.87, -0.5], [0.0, 5.0]])
        viols = validate_drawing(g, emb, coords)
        assert viols

    def test_fan_layouts_valid(self):
        for d in (1, 2, 5, 9):
            fam, coords = layout_frame_fan(d)
            assert validate_drawing(fam.graph, fam.embedding, coords) == []


class TestAngularResolution:
    def test_equilateral_triangle(self):
        g, _, coords = triangle_drawing()
        rep = angular_resolution(g, coords)
        assert rep.resolution == pytest.approx(math.pi / 3)

    def test_gaps_sum_to_two_pi(self):
        fam, coords = layout_frame_fan(5)
        rep = angular_resolution(fam.graph, coords)
        for v, g in enumerate(rep.gaps):
            if g:
                assert sum(g) == pytest.approx(2 * math.pi)

    def test_witness_matches_minimum(self):
        fam, coords = layout_frame_fan(4)
        rep = angular_resolution(fam.graph, coords)
        v, (a, b) = rep.witness
        i = rep.order[v].index(a) if rep.order[v][0] != b else 0
        assert min(min(g) for g in rep.gaps if g) == pytest.approx(rep.resolution)

    def test_zero_length_edge_raises(self):
        g, _, coords = triangle_drawing()
        coords = coords.copy()
        coords[1] = coords[0]
        with pytest.raises(StructureError):
            angular_resolution(g, coords)


class TestFrameProfile:
    @given(st.integers(2, 12), st.integers(0, 1000))
    @settings(max_examples=40, deadline=None)
    def test_additivity_and_telescoping_on_jittered_fans(self, d, seed):
        fam, coords = layout_frame_fan(d)
        rng = np.random.default_rng(seed)
        jit = coords + rng.normal(0.0, 0.01, coords.shape) * np.abs(coords).max(axis=1, keepdims=True)
        jit[fam.roles.root] = coords[fam.roles.root]
        prof = frame_profile(fam.roles, jit)
        # additivity: the composite gap sums agree with directly measured
        # chord angles (all composites stay below pi at this apex angle)
        w = fam.roles.root
        from angres.geometry import angle_at

        for k in range(2, d + 1):
            u_k = fam.roles.u[k - 1]
            v_prev = fam.roles.v[k - 2]
            v_k = fam.roles.v[k - 1]
            assert prof.alpha1[k] == pytest.approx(
                angle_at(jit[v_prev], jit[w], jit[v_k]), abs=TOL
            )
            assert prof.alpha2[k] == pytest.approx(
                angle_at(jit[u_k], jit[w], jit[v_prev]), abs=TOL
            )
        lhs, rhs = telescoping_product(prof)
        assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_fan_profile_values(self):
        d = 6
        fam, coords = layout_frame_fan(d)
        cfg = LayoutConfig()
        prof = frame_profile(fam.roles, coords)
        # uniform fan: each v-gap is apex/(2d)
        for k in range(2, d + 1):
            assert prof.alpha1[k] == pytest.approx(cfg.apex_angle / (2 * d))
        assert prof.apex_total == pytest.approx(cfg.apex_angle)

    def test_claim_bound_on_fans(self):
        for d in (2, 4, 6, 8, 12):
            fam, coords = layout_frame_fan(d)
            q = claim_quantities(fam.roles, coords)
            assert q.averaging_bound_holds
            assert max(2, (d + 1) // 2) <= q.j <= d


class TestSerialization:
    def test_drawing_roundtrip_exact(self):
        fam, coords = layout_frame_fan(3)
        back = read_drawing(write_drawing(coords))
        assert np.array_equal(back, coords)

    def test_signed_area_orientation(self):
        coords = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        assert signed_area((0, 1, 2), coords) > 0
        assert signed_area((0, 2, 1), coords) < 0
