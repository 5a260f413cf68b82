import pytest

from legkit import foliation as fo
from legkit import trees as tr
from legkit import fronts as fr
from legkit.errors import (
    BadInvariants,
    BadLeaves,
    NotConnected,
    NotEllipticForm,
    PatternMismatch,
    SignMismatch,
    TightnessViolation,
)


def in_range_grid(max_tb):
    for tb in range(max_tb, 0):
        for r in range(tb + 1, -tb):
            if fr.in_unknot_range(tb, r):
                yield tb, r


class TestInit:
    def test_minimal_unknot(self):
        s = fo.init_boundary(-1, 0)
        assert len(s.boundary) == 2
        assert s.counts(fo.INTERIOR) == {"e+": 1, "h+": 0, "e-": 0, "h-": 0}

    def test_three_fold(self):
        s = fo.init_boundary(-3, 0)
        assert len(s.boundary) == 6
        assert s.counts(fo.INTERIOR) == {"e+": 2, "h+": 0, "e-": 0, "h-": 1}

    def test_parity_rejected(self):
        with pytest.raises(BadInvariants):
            fo.init_boundary(-2, 0)

    def test_positive_tb_rejected(self):
        with pytest.raises(BadInvariants):
            fo.init_boundary(0, 1)

    def test_alternating_signs(self):
        s = fo.init_boundary(-4, 1)
        sm = s.sing_map
        signs = [sm[b].sign for b in s.boundary]
        assert all(signs[i] != signs[(i + 1) % len(signs)] for i in range(len(signs)))


class TestNaf:
    def test_identity_on_naf(self):
        s = fo.init_boundary(-3, 0)
        assert fo.to_naf(s) == s

    def test_single_conversion(self):
        s = fo.init_boundary(-1, 0, boundary_kinds=["e", "e"])
        out = fo.to_naf(s)
        tags = [out.sing_map[b].tag() for b in out.boundary]
        assert tags == ["+h", "-e"]
        conversions = [st for st in out.trace if st.rule == "convert"]
        assert len(conversions) == 1

    def test_mixed_boundary(self):
        s = fo.init_boundary(-2, 1, boundary_kinds=["e", "h", "e", "h"])
        out = fo.to_naf(s)
        assert out.is_naf()
        assert len([st for st in out.trace if st.rule == "convert"]) == 4


class TestAtomicRewrites:
    def test_eliminate_requires_same_sign(self):
        s = fo.init_boundary(-3, 0)
        with pytest.raises(SignMismatch):
            fo.eliminate(s, "p0", "q0")  # e+ paired with h-

    def test_eliminate_requires_connection(self):
        s = fo.create_pair(fo.init_boundary(-5, 0), "leaf", 1)
        h_plus = next(i for i, _ in s.sing if i.startswith("ch"))
        with pytest.raises(NotConnected):
            fo.eliminate(s, "p0", h_plus)  # same sign, no shared separatrix

    def test_create_then_eliminate_restores_counts(self):
        s = fo.init_boundary(-3, 0)
        before = s.counts()
        s2 = fo.create_pair(s, "leaf", 1)
        e_id = next(i for i, _ in s2.sing if i.startswith("ce"))
        h_id = next(i for i, _ in s2.sing if i.startswith("ch"))
        s3 = fo.eliminate(s2, e_id, h_id)
        assert s3.counts() == before

    def test_convert_deltas(self):
        s = fo.init_boundary(-3, 0)
        out = fo.convert(s, "p0", "gamma", "tau")
        assert out.counts()["e+"] - s.counts()["e+"] == 1
        assert out.counts()["h+"] - s.counts()["h+"] == 1
        assert out.sing_map["p0"].kind == fo.HYPERBOLIC

    def test_convert_bad_leaves(self):
        s = fo.init_boundary(-3, 0)
        with pytest.raises(BadLeaves):
            fo.convert(s, "p0", "gamma", "gamma")

    def test_tightness_guard(self):
        s = fo.init_boundary(-3, 0)
        # closing a same-sign separatrix cycle p0 - q? ... use two rewires
        s = fo.create_pair(s, "leaf", 1)
        e_id = next(i for i, _ in s.sing if i.startswith("ce"))
        h_id = next(i for i, _ in s.sing if i.startswith("ch"))
        s = fo.rewire(s, add=("p0", e_id))
        with pytest.raises(TightnessViolation):
            fo.rewire(s, add=("p0", h_id))  # p0-e-h-p0 same-sign cycle

    def test_curve_move_involution(self):
        s = fo.init_boundary(-1, 0)
        s = fo.add_singularity_curve(s, "g", -1)
        split = fo.singularity_curve_move(s, "g", "split")
        back = fo.singularity_curve_move(split, "g", "merge")
        assert back.curves == s.curves

    def test_curve_move_pattern_mismatch(self):
        s = fo.init_boundary(-1, 0)
        with pytest.raises(PatternMismatch):
            fo.singularity_curve_move(s, "nope", "split")
        s = fo.add_singularity_curve(s, "g", 1)
        with pytest.raises(PatternMismatch):
            fo.singularity_curve_move(s, "g", "merge")


class TestReduce:
    def test_exact_counts_default(self):
        for tb, r in in_range_grid(-9):
            s = fo.reduce_interior(fo.to_naf(fo.init_boundary(tb, r)))
            e, h = fo.interior_count_targets(tb, r)
            assert s.counts(fo.INTERIOR) == {"e+": e, "h+": 0, "e-": 0, "h-": h}

    def test_exact_counts_from_raw_boundary(self):
        for tb, r in [(-1, 0), (-3, 0), (-2, 1), (-4, -1)]:
            kinds = ["e"] * (2 * abs(tb))
            s = fo.reduce_interior(fo.to_naf(fo.init_boundary(tb, r, kinds)))
            e, h = fo.interior_count_targets(tb, r)
            assert s.counts(fo.INTERIOR) == {"e+": e, "h+": 0, "e-": 0, "h-": h}

    def test_spot_value(self):
        assert fo.interior_count_targets(-1, 0) == (1, 0)

    def test_needs_naf(self):
        s = fo.init_boundary(-1, 0, boundary_kinds=["e", "e"])
        with pytest.raises(PatternMismatch):
            fo.reduce_interior(s)


class TestEllipticForm:
    def test_minimal(self):
        s = fo.reduce_interior(fo.to_naf(fo.init_boundary(-1, 0)))
        out, regions = fo.to_elliptic_form(s)
        assert out.counts(fo.INTERIOR) == {"e+": 1, "h+": 0, "e-": 0, "h-": 0}
        tags = [out.sing_map[b].tag() for b in out.boundary]
        assert tags == ["+h", "-e"]
        assert regions.count("type(b)") == 1
        assert regions.count("semi-type(a)") == 1

    def test_idempotent(self):
        s = fo.reduce_interior(fo.to_naf(fo.init_boundary(-5, 2)))
        once, _ = fo.to_elliptic_form(s)
        twice, _ = fo.to_elliptic_form(once)
        assert once == twice

    def test_decomposition_nonempty(self):
        s = fo.reduce_interior(fo.to_naf(fo.init_boundary(-2, 1)))
        out, regions = fo.to_elliptic_form(s)
        assert out.is_elliptic_form()
        assert len(regions.regions) > 0


class TestSkeleton:
    def test_minimal_edge(self):
        _, _, skel = fo.run_pipeline(-1, 0)
        assert len(skel.tree.vertices) == 2
        assert skel.tree.counts() == (1, 1)

    def test_three_vertex_path(self):
        _, _, skel = fo.run_pipeline(-2, 1)
        assert len(skel.tree.vertices) == 3
        assert tr.expected_invariants(skel.tree) == (-2, 1)

    def test_not_elliptic_form_rejected(self):
        s = fo.init_boundary(-3, 0)
        with pytest.raises(NotEllipticForm):
            fo.extract_skeleton(s)

    def test_round_trip_through_build_front(self):
        for tb, r in [(-1, 0), (-3, 2), (-6, -1), (-9, 0)]:
            _, _, skel = fo.run_pipeline(tb, r)
            d = tr.build_front(skel.embedding())
            assert fr.invariant_pair(fr.OrientedFront.default(d)) == (tb, r)


class TestDump:
    def test_deterministic(self):
        a = fo.dump_state(fo.run_pipeline(-3, 0)[0])
        b = fo.dump_state(fo.run_pipeline(-3, 0)[0])
        assert a == b
        assert a.startswith("tb -3 r 0")
        assert "boundary" in a and "interior" in a
