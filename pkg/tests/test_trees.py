import random
from fractions import Fraction as F

import pytest

from legkit import fronts as fr
from legkit import trees as tr
from legkit.errors import (
    BadSigning,
    NotAcceptable,
    NotATree,
    NotEndEdge,
    OutOfRange,
    ParseError,
    SignMismatch,
)

EDGE = "v 0 0 0 +\nv 1 1 0 -\ne 0 1"


def path_embedding(signs):
    t = tr.SignedTree.make(
        {i: s for i, s in enumerate(signs)},
        [(i, i + 1) for i in range(len(signs) - 1)],
    )
    coords = {i: (F(i), F(0)) for i in range(len(signs))}
    return tr.AcceptableEmbedding.make(t, coords)


def front_invariants(emb):
    d = tr.build_front(emb)
    return fr.invariant_pair(fr.OrientedFront.default(d))


class TestParsing:
    def test_single_edge(self):
        emb = tr.parse_tree(EDGE)
        assert emb.tree.counts() == (1, 1)
        assert tr.serialize_tree(emb) == EDGE

    def test_slope_too_steep(self):
        with pytest.raises(NotAcceptable) as exc:
            tr.parse_tree("v 0 0 0 +\nv 1 1 2 -\ne 0 1")
        assert exc.value.condition == 2

    def test_adjacent_equal_signs(self):
        with pytest.raises(BadSigning):
            tr.parse_tree("v 0 0 0 +\nv 1 1 0 +\ne 0 1")

    def test_not_a_tree(self):
        with pytest.raises(NotATree):
            tr.parse_tree(
                "v 0 0 0 +\nv 1 1 0 -\nv 2 2 0 +\ne 0 1\ne 1 2\ne 0 2"
            )

    def test_two_left_edges(self):
        text = "v 0 0 1/4 +\nv 1 0 -1/4 +\nv 2 1 0 -\ne 0 2\ne 1 2"
        with pytest.raises(NotAcceptable) as exc:
            tr.parse_tree(text)
        assert exc.value.condition == 3

    def test_leftmost_must_be_end_vertex(self):
        text = "v 0 0 0 -\nv 1 1 0 +\nv 2 1 1/4 +\ne 0 1\ne 0 2"
        with pytest.raises(NotAcceptable) as exc:
            tr.parse_tree(text)
        assert exc.value.condition == 4

    def test_syntax_error_has_line(self):
        with pytest.raises(ParseError) as exc:
            tr.parse_tree("v 0 0 0 +\nbogus line")
        assert exc.value.line == 2


class TestBuildFront:
    def test_single_edge_gives_basic_front(self):
        emb = tr.parse_tree(EDGE)
        d = tr.build_front(emb)
        assert fr.serialize_front(d) == "L 1\nR 1"
        assert front_invariants(emb) == (-1, 0)

    def test_three_path(self):
        emb = path_embedding([1, -1, 1])
        d = tr.build_front(emb)
        tb, r = front_invariants(emb)
        n_cusps = sum(1 for e in d.events if e.kind != "X")
        assert (tb, r) == (-2, tr.SIGMA * 1)
        assert n_cusps == 4

    def test_star(self):
        t = tr.SignedTree.make(
            {0: 1, 1: -1, 2: 1, 3: 1}, [(0, 1), (1, 2), (1, 3)]
        )
        coords = {0: (F(0), F(0)), 1: (F(1), F(0)),
                  2: (F(2), F(1, 8)), 3: (F(2), F(-1, 8))}
        emb = tr.AcceptableEmbedding.make(t, coords)
        assert front_invariants(emb) == (-3, tr.SIGMA * 2)

    def test_single_component_always(self):
        rng = random.Random(17)
        for _ in range(60):
            emb = tr.random_acceptable_embedding(rng, 12)
            d = tr.build_front(emb)
            assert fr.trace_components(d).n_components == 1

    def test_oracle_fuzz(self):
        rng = random.Random(23)
        for _ in range(150):
            emb = tr.random_acceptable_embedding(rng, 14)
            assert front_invariants(emb) == tr.expected_invariants(emb.tree)


class TestSigmaConvention:
    def test_sigma_regression_on_three_path(self):
        # The module-wide sign convention is frozen: the (+,-,+) path
        # must build to r = SIGMA under the default orientation.
        emb = path_embedding([1, -1, 1])
        _, r = front_invariants(emb)
        assert r == tr.SIGMA == 1


class TestMoves:
    def test_move_end_edge(self):
        t = tr.SignedTree.make(
            {0: 1, 1: -1, 2: 1, 3: -1, 4: 1},
            [(0, 1), (1, 2), (2, 3), (3, 4)],
        )
        moved = tr.move_end_edge(t, (3, 4), 1)
        assert moved.counts() == t.counts()
        assert frozenset((1, 4)) in moved.edges

    def test_sign_mismatch(self):
        t = tr.SignedTree.make({0: 1, 1: -1, 2: 1}, [(0, 1), (1, 2)])
        with pytest.raises(SignMismatch):
            tr.move_end_edge(t, (1, 2), 0)  # attachment -, target +

    def test_not_end_edge(self):
        t = tr.SignedTree.make(
            {0: 1, 1: -1, 2: 1, 3: -1}, [(0, 1), (1, 2), (2, 3)]
        )
        with pytest.raises(NotEndEdge):
            tr.move_end_edge(t, (1, 2), 3)


class TestNormalization:
    def test_already_almost_linear(self):
        t = tr.SignedTree.make({0: 1, 1: -1}, [(0, 1)])
        out, moves = tr.normalize_to_almost_linear(t)
        assert out.is_almost_linear()
        assert moves == []

    def test_binary_tree(self):
        t = tr.SignedTree.make(
            {0: 1, 1: -1, 2: -1, 3: 1, 4: 1, 5: 1, 6: 1},
            [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
        )
        out, moves = tr.normalize_to_almost_linear(t)
        assert out.is_almost_linear()
        assert out.counts() == t.counts()
        cur = t
        for mv in moves:
            cur = tr.move_end_edge(cur, mv.operands[0], mv.operands[1])
        assert cur.edges == out.edges

    def test_fuzz_reaches_broom(self):
        rng = random.Random(99)
        for _ in range(80):
            t = tr.random_signed_tree(rng, 12)
            out, _ = tr.normalize_to_almost_linear(t)
            assert out.is_almost_linear()
            assert out.counts() == t.counts()


class TestCatalog:
    def test_basic(self):
        assert fr.serialize_front(tr.catalog_front(-1, 0)) == "L 1\nR 1"

    def test_examples(self):
        for tb, r in [(-2, 1), (-5, 2), (-3, 0), (-4, -3)]:
            d = tr.catalog_front(tb, r)
            of = fr.OrientedFront.default(d)
            assert fr.invariant_pair(of) == (tb, r)
            assert fr.trace_components(d).n_components == 1

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            tr.catalog_tree(-2, 0)
        with pytest.raises(OutOfRange):
            tr.catalog_front(1, 0)

    def test_catalog_tree_is_almost_linear(self):
        for tb, r in [(-1, 0), (-4, 1), (-7, 0), (-9, -4)]:
            emb = tr.catalog_tree(tb, r)
            assert emb.tree.is_almost_linear()
            v = len(emb.tree.vertices)
            plus, minus = emb.tree.counts()
            assert v == 1 - tb and tr.SIGMA * (plus - minus) == r


class TestNormalizeToCatalog:
    def test_single_edge_empty_record(self):
        emb = tr.parse_tree(EDGE)
        front, record = tr.normalize_front_to_catalog(emb)
        assert fr.serialize_front(front) == "L 1\nR 1"
        assert record == []

    def test_confluence_fuzz(self):
        rng = random.Random(314)
        groups = {}
        for _ in range(120):
            emb = tr.random_acceptable_embedding(rng, 12)
            groups.setdefault(tr.expected_invariants(emb.tree), []).append(emb)
        pairs = 0
        for inv, embs in groups.items():
            target = fr.serialize_front(tr.catalog_front(*inv))
            for emb in embs:
                front, _ = tr.normalize_front_to_catalog(emb)
                assert fr.serialize_front(front) == target
                pairs += 1
        assert pairs >= 60
