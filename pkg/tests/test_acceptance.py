"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line (visible under pytest -s) after running
the criterion at its stated tolerance; any failure raises normally.
"""

import random
import time
from fractions import Fraction

from legkit import classify as cl
from legkit import foliation as fo
from legkit import fronts as fr
from legkit import lifting as lf
from legkit import trees as tr


def report(name, t0, detail, budget=None):
    dt = time.time() - t0
    line = f"PASS {name}: {detail} ({dt:.2f}s"
    line += f", budget {budget:.0f}s)" if budget else ")"
    print(line)
    if budget is not None:
        assert dt < budget, f"{name} exceeded its time budget: {dt:.2f}s"


def grid_pairs():
    for m in range(-5, 6):
        for k in range(0, 6):
            yield -abs(m) - 2 * k - 1, m


def test_catalog_completeness():
    t0 = time.time()
    count = 0
    for tb, r in grid_pairs():
        d = tr.catalog_front(tb, r)
        of = fr.OrientedFront.default(d)
        assert of.trace.n_components == 1
        assert fr.invariant_pair(of) == (tb, r)
        count += 1
    assert count == 66
    report("catalog-completeness", t0, f"{count} pairs, exact invariants", budget=1)


def test_tree_oracle():
    t0 = time.time()
    rng = random.Random(0xC0FFEE)
    for _ in range(500):
        emb = tr.random_acceptable_embedding(rng, max_vertices=14)
        d = tr.build_front(emb)
        of = fr.OrientedFront.default(d)
        got = fr.invariant_pair(of)
        assert got == tr.expected_invariants(emb.tree)
        tb, r = got
        assert (tb + r) % 2 == 1
        assert tb <= -1 - abs(r)
    report("tree-oracle", t0, "500 fuzz trees: build == closed form, parity, Bennequin",
           budget=5)


def test_normalization_confluence():
    t0 = time.time()
    rng = random.Random(0xBEEF)
    groups = {}
    produced = 0
    while produced < 200:
        a = tr.random_acceptable_embedding(rng, max_vertices=12)
        inv = tr.expected_invariants(a.tree)
        if inv in groups:
            b = groups[inv]
            fa, _ = tr.normalize_front_to_catalog(a)
            fb, _ = tr.normalize_front_to_catalog(b)
            target = fr.serialize_front(tr.catalog_front(*inv))
            assert fr.serialize_front(fa) == fr.serialize_front(fb) == target
            produced += 1
        groups[inv] = a
    report("normalization-confluence", t0, "200 equal-invariant pairs byte-identical",
           budget=5)


def test_stabilization_algebra():
    t0 = time.time()
    rng = random.Random(0xFACADE)
    displaced = 0
    for _ in range(1000):
        d = fr.random_single_component_front(rng, max_events=18)
        of = fr.OrientedFront.default(d)
        tb0, r0 = fr.invariant_pair(of)
        arcs = fr.trace_components(d).arcs
        arc = rng.randrange(len(arcs))
        direction = rng.choice((fr.UP, fr.DOWN))
        d2 = fr.insert_zigzag(d, arc, direction)
        tb1, r1 = fr.invariant_pair(fr.OrientedFront.default(d2))
        assert tb1 == tb0 - 1
        assert r1 == r0 + (1 if direction == fr.UP else -1)
        if displaced < 300:
            z = fr.find_zigzags(d2)[0]
            taken = set(z.kink_arcs) | {z.carrier_in, z.carrier_out}
            tr2 = fr.trace_components(d2)
            targets = [a.index for a in tr2.arcs if a.index not in taken]
            if targets:
                d3 = fr.displace_zigzag(d2, z.kink_arcs[0], targets[-1])
                assert fr.invariant_pair(fr.OrientedFront.default(d3)) == (tb1, r1)
                displaced += 1
    assert displaced >= 300
    report("stabilization-algebra", t0,
           f"1000 inserts exact, {displaced} displacements invariant-preserving")


def test_foliation_pipeline():
    t0 = time.time()
    checked = 0
    for tb in range(-9, 0):
        for r in range(tb + 1, -tb):
            if not fr.in_unknot_range(tb, r):
                continue
            # raw all-elliptic boundary exercises the conversion rewrites
            state = fo.init_boundary(tb, r, boundary_kinds=["e"] * (2 * abs(tb)))
            state = fo.to_naf(state)
            e, h = fo.interior_count_targets(tb, r)
            assert state.identity_differences(fo.INTERIOR) == (e, -h)
            state = fo.reduce_interior(state)
            naf_steps = state.trace
            for step in naf_steps:
                deltas = dict(step.delta)
                assert deltas.get("e+", 0) - deltas.get("h+", 0) == 0
                assert deltas.get("e-", 0) - deltas.get("h-", 0) == 0
            state, _ = fo.to_elliptic_form(state)
            absorbs = [s for s in state.trace if s.rule == "absorb"]
            assert len(absorbs) == h  # boundary absorption exits the NAF regime
            skel = fo.extract_skeleton(state)
            assert len(skel.tree.vertices) == 1 - tb
            assert tr.expected_invariants(skel.tree) == (tb, r)
            d = tr.build_front(skel.embedding())
            assert fr.invariant_pair(fr.OrientedFront.default(d)) == (tb, r)
            checked += 1
    assert checked == 45
    report("foliation-pipeline", t0,
           f"{checked} pairs |tb|<=9: rewrites ledger-exact, skeleton 1-tb vertices, "
           "round-trip", budget=2)


def test_reduced_form_counts():
    t0 = time.time()
    for tb in range(-9, 0):
        for r in range(tb + 1, -tb):
            if not fr.in_unknot_range(tb, r):
                continue
            s = fo.reduce_interior(fo.to_naf(fo.init_boundary(tb, r)))
            e, h = (1 - tb + r) // 2, (-1 - tb + r) // 2
            assert s.counts(fo.INTERIOR) == {"e+": e, "h+": 0, "e-": 0, "h-": h}
    assert fo.interior_count_targets(-1, 0) == (1, 0)
    report("reduced-form-counts", t0, "interior (e+, h-) exact on grid; (-1,0) -> (1,0)")


def test_overtwisted_oracles():
    t0 = time.time()
    for k in range(1, 11):
        lk = [[1] * k for _ in range(k)]
        assert cl.hopf_after_lutz([-1] * k, lk) == k * (k - 2)
    for h in range(-5, 6):
        classes = cl.exceptional_unknot_classes(h)
        if h != -1:
            assert classes.is_empty()
            assert classes.up_to(50) == []
    E = cl.exceptional_unknot_classes(-1)
    expected = [(1, 0)] + [p for n in range(2, 51) for p in ((n, n - 1), (n, -(n - 1)))]
    assert E.up_to(50) == expected
    assert all(p in E for p in expected)
    assert (2, 0) not in E and (0, 1) not in E
    assert cl.d3_from_hopf(-1) == Fraction(1, 2)
    report("overtwisted-oracles", t0,
           "k(k-2) for k=1..10; exceptional classes exact for h in -5..5; d3(-1) = 1/2")


def test_numeric_cross_check():
    t0 = time.time()
    checked = 0
    for m in range(-3, 4):
        for k in range(0, 6):
            tb = -abs(m) - 2 * k - 1
            d = tr.catalog_front(tb, m)
            of = fr.OrientedFront.default(d)
            lc = lf.legendrian_lift(lf.realize_front(d), of=of)
            diam = lc.diameter()
            assert lc.legendrian_residual() / diam < 1e-9
            assert abs(lc.closure_integral()) / diam < 1e-9
            assert lf.rotation_residual(lc) < 0.01
            assert lf.numeric_rotation(lc) == fr.rotation_number(of) == m
            checked += 1
    report("numeric-cross-check", t0,
           f"{checked} catalog fronts |r|<=3: residual, closure < 1e-9, rotation exact",
           budget=10)


def test_lattice_identities():
    t0 = time.time()
    for n in range(-20, 21):
        if n == 0:
            continue
        assert cl.complement_torus_data(n).wedge_checks() == (1, n)
    report("lattice-identities", t0, "wedge identities exact for 1 <= |n| <= 20")
