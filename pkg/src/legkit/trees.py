"""Signed acceptable tree embeddings and tree-based wavefronts.

A signed tree alternates vertex signs along edges.  An acceptable planar
embedding has at least one edge, near-horizontal straight edges, at most
one edge attached on the left of any vertex, and an end vertex as its
left-most vertex.  Such an embedding determines a closed front (the
tree-based wavefront) built by an anchor step at the left-most vertex and
an induction over right-attached edges, reflecting each right subtree in
the horizontal axis as it is entered.

In the event model the induction portions are:

    n = 0   a capping right cusp
    n = 1   a two-cusp zig-zag whose sense matches the vertex sign
    n >= 2  a branching portion: the first branch opens with a loft cusp
            plus a compensating zig-zag, later branches with bare lofts
            (easy chirality uses stacked crotch cusps plus one zig-zag)

Reflection is tracked as a parity flag: a reflected subtree emits the
vertically mirrored event templates and flips the roles of the strand
pair it acts on.  The resulting front always has

    tb = -(V - 1),      r = SIGMA * (V_plus - V_minus)

which expected_invariants returns in closed form; the construction is
validated against it exhaustively in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    BadSigning,
    NotAcceptable,
    NotATree,
    NotEndEdge,
    OutOfRange,
    ParseError,
    SignMismatch,
)
from .fronts import (
    CROSS,
    LEFT,
    RIGHT,
    FrontDiagram,
    FrontEvent,
    OrientedFront,
    in_unknot_range,
    invariant_pair,
)

# Global sign convention: r = SIGMA * (V_plus - V_minus) under the default
# front orientation.  Pinned by measurement on the 3-path (+,-,+) and frozen;
# a regression test guards it.
SIGMA = 1


@dataclass(frozen=True)
class SignedTree:
    """Abstract tree with alternating vertex signs.

    ``signs`` maps vertex id -> +1 or -1; ``edges`` is a frozenset of
    2-element frozensets of vertex ids.
    """

    signs: tuple[tuple[int, int], ...]  # sorted (vertex, sign) pairs
    edges: frozenset[frozenset[int]]

    @staticmethod
    def make(signs: dict[int, int], edges: Iterable[tuple[int, int]]) -> "SignedTree":
        e = frozenset(frozenset(p) for p in edges)
        t = SignedTree(tuple(sorted(signs.items())), e)
        t.validate()
        return t

    @property
    def sign_map(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def vertices(self) -> list[int]:
        return [v for v, _ in self.signs]

    def neighbors(self, v: int) -> list[int]:
        out = []
        for e in self.edges:
            if v in e:
                (w,) = e - {v} if len(e) == 2 else (v,)
                out.append(w)
        return sorted(out)

    def valence(self, v: int) -> int:
        return len(self.neighbors(v))

    def validate(self) -> None:
        sm = self.sign_map
        verts = set(sm)
        if any(s not in (1, -1) for s in sm.values()):
            raise BadSigning("vertex signs must be +1 or -1")
        for e in self.edges:
            if len(e) != 2 or not e <= verts:
                raise NotATree(f"bad edge {set(e)}")
        if len(self.edges) != len(verts) - 1:
            raise NotATree(
                f"{len(self.edges)} edges on {len(verts)} vertices is not a tree"
            )
        # connectivity
        if verts:
            seen = {min(verts)}
            frontier = [min(verts)]
            while frontier:
                u = frontier.pop()
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        frontier.append(w)
            if seen != verts:
                raise NotATree("edge set is not connected")
        for e in self.edges:
            u, w = tuple(e)
            if sm[u] == sm[w]:
                raise BadSigning(f"adjacent vertices {u}, {w} share sign")

    def counts(self) -> tuple[int, int]:
        """(V_plus, V_minus)."""
        vals = [s for _, s in self.signs]
        return vals.count(1), vals.count(-1)

    def is_almost_linear(self) -> bool:
        """At most one vertex of valence > 2, with at most one non-end edge there."""
        big = [v for v in self.vertices if self.valence(v) > 2]
        if len(big) > 1:
            return False
        if not big:
            return True
        hub = big[0]
        non_end = sum(1 for w in self.neighbors(hub) if self.valence(w) > 1)
        return non_end <= 1


@dataclass(frozen=True)
class AcceptableEmbedding:
    """A signed tree with planar coordinates meeting the four conditions."""

    tree: SignedTree
    coords: tuple[tuple[int, tuple[Fraction, Fraction]], ...]
    epsilon: Fraction = Fraction(1, 2)

    @staticmethod
    def make(
        tree: SignedTree,
        coords: dict[int, tuple[Fraction, Fraction]],
        epsilon: Fraction = Fraction(1, 2),
    ) -> "AcceptableEmbedding":
        emb = AcceptableEmbedding(tree, tuple(sorted(coords.items())), epsilon)
        emb.validate()
        return emb

    @property
    def coord_map(self) -> dict[int, tuple[Fraction, Fraction]]:
        return dict(self.coords)

    def validate(self) -> None:
        self.tree.validate()
        cm = self.coord_map
        if set(cm) != set(self.tree.vertices):
            raise NotAcceptable(0, "coordinates must cover exactly the vertex set")
        if len(self.tree.edges) < 1:
            raise NotAcceptable(1, "embedding needs at least one edge")
        for e in self.tree.edges:
            u, w = tuple(e)
            dx = cm[w][0] - cm[u][0]
            dy = cm[w][1] - cm[u][1]
            if dx == 0 or abs(Fraction(dy) / Fraction(dx)) >= self.epsilon:
                raise NotAcceptable(
                    2, f"edge {u}-{w} slope not strictly between +-{self.epsilon}"
                )
        for v in self.tree.vertices:
            left = [w for w in self.tree.neighbors(v) if cm[w][0] < cm[v][0]]
            if len(left) > 1:
                raise NotAcceptable(3, f"vertex {v} has {len(left)} edges on its left")
        xs = sorted((cm[v][0], v) for v in self.tree.vertices)
        if len(xs) > 1 and xs[0][0] == xs[1][0]:
            raise NotAcceptable(3, "left-most vertex is not unique")
        leftmost = xs[0][1]
        if self.tree.valence(leftmost) != 1:
            raise NotAcceptable(4, f"left-most vertex {leftmost} is not an end vertex")

    @property
    def leftmost(self) -> int:
        cm = self.coord_map
        return min(self.tree.vertices, key=lambda v: (cm[v][0], v))

    def right_children(self, v: int, parent: Optional[int]) -> list[int]:
        """Right-attached neighbors, numbered from the top (steepest slope first)."""
        cm = self.coord_map
        kids = [w for w in self.tree.neighbors(v) if w != parent and cm[w][0] > cm[v][0]]

        def slope(w):
            return Fraction(cm[w][1] - cm[v][1]) / Fraction(cm[w][0] - cm[v][0])

        return sorted(kids, key=lambda w: (-slope(w), w))


# ---------------------------------------------------------------------------
# Front construction


def build_front(emb: AcceptableEmbedding) -> FrontDiagram:
    """Construct the tree-based wavefront of an acceptable signed embedding."""
    emb.validate()
    signs = emb.tree.sign_map
    events: list[FrontEvent] = []
    root = emb.leftmost
    (child,) = [w for w in emb.tree.neighbors(root)]

    def emit(kind: str, pos: int) -> None:
        events.append(FrontEvent(kind, pos))

    def subtree(v: int, parent: int, p: int, phi: int) -> None:
        # The strand pair of the edge parent->v sits at positions (p, p+1).
        w = 2  # local bundle width

        def local(kind: str, offset: int) -> None:
            nonlocal w
            if phi < 0:
                offset = (w + 2 - offset) if kind == LEFT else (w - offset)
            emit(kind, p - 1 + offset)
            w += 2 if kind == LEFT else (-2 if kind == RIGHT else 0)

        kids = emb.right_children(v, parent)
        n = len(kids)
        if n == 0:
            local(RIGHT, 1)
            return
        s_eff = signs[v] * phi
        if n == 1:
            if s_eff > 0:
                local(LEFT, 1)  # downward zig-zag
                local(RIGHT, 2)
            else:
                local(LEFT, 2)  # upward zig-zag
                local(RIGHT, 1)
            subtree(kids[0], v, p, phi)
            return
        if s_eff < 0:
            # stacked crotch cusps plus one compensating zig-zag
            for i in range(1, n):
                local(LEFT, 2 * i)
            local(LEFT, 2)
            local(RIGHT, 1)
            width = 2 * n
            bases = []
            for j in range(1, n + 1):
                a = 2 * j - 1
                bases.append(p - 1 + (a if phi > 0 else width - a))
            for child_v, base in zip(kids, sorted(bases, reverse=True)):
                subtree(child_v, v, base, phi)
        else:
            # nested lofts; the first branch carries the compensating zig-zag
            for i in range(1, n):
                local(LEFT, 3)  # loft: opens the next nested branch
                if i == 1:
                    local(LEFT, 1)  # downward zig-zag on the outer strand
                    local(RIGHT, 2)
                subtree(kids[i - 1], v, p + 1, -phi)
                w -= 2  # inner branch closed its pair
            subtree(kids[n - 1], v, p, phi)

    emit(LEFT, 1)
    subtree(child, root, 1, 1)
    return FrontDiagram(tuple(events))


def expected_invariants(t: SignedTree) -> tuple[int, int]:
    """Closed-form invariants of the tree-based front: (-(V-1), SIGMA*(V+ - V-))."""
    plus, minus = t.counts()
    return -(plus + minus - 1), SIGMA * (plus - minus)


# ---------------------------------------------------------------------------
# Tree moves and normalization


@dataclass(frozen=True)
class MoveRecord:
    """One recorded normalization step."""

    kind: str  # "end-edge move" | "zig-zag displace" | ...
    operands: tuple
    before: tuple[int, int]
    after: tuple[int, int]


def _end_of_edge(t: SignedTree, edge: frozenset[int]) -> tuple[int, int]:
    """Return (attachment, end_vertex) for an end edge."""
    u, w = tuple(edge)
    vu, vw = t.valence(u), t.valence(w)
    if vu == 1 and vw == 1:
        return (u, w)  # single-edge tree; either role works
    if vw == 1:
        return (u, w)
    if vu == 1:
        return (w, u)
    raise NotEndEdge(f"edge {u}-{w} has no end vertex")


def move_end_edge(t: SignedTree, edge: tuple[int, int], target: int) -> SignedTree:
    """Re-attach an end edge to another vertex of the same sign."""
    e = frozenset(edge)
    if e not in t.edges:
        raise NotATree(f"no edge {edge}")
    attach, leaf = _end_of_edge(t, e)
    sm = t.sign_map
    if target == leaf:
        raise SignMismatch("cannot attach an end edge to its own end vertex")
    if sm[target] != sm[attach]:
        raise SignMismatch(
            f"target {target} has sign {sm[target]:+d}, attachment requires {sm[attach]:+d}"
        )
    edges = set(t.edges) - {e} | {frozenset((target, leaf))}
    return SignedTree.make(sm, [tuple(x) for x in edges])


def _hubs(t: SignedTree) -> tuple[Optional[int], Optional[int]]:
    plus = [v for v, s in t.signs if s == 1]
    minus = [v for v, s in t.signs if s == -1]
    return (min(plus) if plus else None, min(minus) if minus else None)


def _greedy_to_double_star(t: SignedTree) -> tuple[SignedTree, list[tuple]]:
    """Gather every end edge onto the canonical hub of its attachment sign.

    Returns the double-star form and the move list as (edge, target) pairs.
    Each move strictly reduces the number of edges not incident to a hub.
    """
    p0, m0 = _hubs(t)
    hubs = {v for v in (p0, m0) if v is not None}
    moves: list[tuple] = []
    cur = t
    for _ in range(4 * len(t.vertices) + 8):
        sm = cur.sign_map
        pending = None
        for e in sorted(cur.edges, key=lambda e: tuple(sorted(e))):
            if e & hubs:
                continue
            u, w = tuple(e)
            for attach, leaf in ((u, w), (w, u)):
                if cur.valence(leaf) == 1:
                    target = p0 if sm[attach] == 1 else m0
                    if target is not None and target != leaf:
                        pending = ((attach, leaf), target)
                        break
            if pending:
                break
        if pending is None:
            break
        edge, target = pending
        cur = move_end_edge(cur, edge, target)
        moves.append((edge, target))
    assert all(e & hubs for e in cur.edges), "double-star gathering did not converge"
    return cur, moves


def canonical_broom(signs: Sequence[int], ids: Sequence[int]) -> SignedTree:
    """The canonical almost-linear tree on a given sign multiset.

    A broom: an alternating path ending in a hub at the right, with all
    excess majority-sign vertices hanging off the hub as leaves.  For a
    balanced multiset it is the plain alternating path starting with +.
    """
    plus = sorted(v for v, s in zip(ids, signs) if s == 1)
    minus = sorted(v for v, s in zip(ids, signs) if s == -1)
    r = len(plus) - len(minus)
    if r == 0:
        order = [x for pair in zip(plus, minus) for x in pair]
        leaves: list[int] = []
    else:
        maj, mino = (plus, minus) if r > 0 else (minus, plus)
        q = len(mino)
        order = [x for pair in zip(maj[:q], mino) for x in pair]
        leaves = maj[q:]
    edges = [(order[i], order[i + 1]) for i in range(len(order) - 1)]
    hub = order[-1]
    edges += [(hub, leaf) for leaf in leaves]
    sm = {v: s for v, s in zip(ids, signs)}
    return SignedTree.make(sm, edges)


def normalize_to_almost_linear(t: SignedTree) -> tuple[SignedTree, list[MoveRecord]]:
    """Reduce a signed tree to the canonical broom by legal end-edge moves."""
    t.validate()
    if len(t.vertices) <= 1:
        return t, []
    inv = expected_invariants(t)
    target = canonical_broom([s for _, s in t.signs], [v for v, _ in t.signs])
    _, fwd = _greedy_to_double_star(t)
    _, bwd = _greedy_to_double_star(target)
    moves: list[tuple] = []
    cur = t
    for edge, tgt in fwd:
        cur = move_end_edge(cur, edge, tgt)
        moves.append((edge, tgt))
    # reverse the target's gathering: each (edge=(attach, leaf), tgt) undoes
    # to moving (tgt, leaf) back to attach
    for (attach, leaf), tgt in reversed(bwd):
        cur = move_end_edge(cur, (tgt, leaf), attach)
        moves.append(((tgt, leaf), attach))
    assert cur.edges == target.edges, "normalization did not reach the broom"
    records = [
        MoveRecord(kind="end-edge move", operands=(edge, tgt), before=inv, after=inv)
        for edge, tgt in moves
    ]
    assert cur.is_almost_linear()
    return cur, records


# ---------------------------------------------------------------------------
# Catalog


def catalog_tree(tb: int, r: int) -> AcceptableEmbedding:
    """Canonical acceptable embedding realizing (tb, r); OutOfRange otherwise."""
    if not in_unknot_range(tb, r):
        raise OutOfRange(f"(tb, r) = ({tb}, {r}) is not realized by an unknot")
    v_total = 1 - tb
    n_plus = (v_total + SIGMA * r) // 2
    n_minus = v_total - n_plus
    signs = [1] * n_plus + [-1] * n_minus
    ids = list(range(v_total))
    broom = canonical_broom(signs, ids)
    # path order: walk from the unique end farthest from the hub
    sm = broom.sign_map
    if r == 0:
        plus = sorted(v for v in ids if sm[v] == 1)
        minus = sorted(v for v in ids if sm[v] == -1)
        order = [x for pair in zip(plus, minus) for x in pair]
        leaves = []
    else:
        maj = sorted(v for v in ids if sm[v] == (1 if SIGMA * r > 0 else -1))
        mino = sorted(v for v in ids if sm[v] == (-1 if SIGMA * r > 0 else 1))
        q = len(mino)
        order = [x for pair in zip(maj[:q], mino) for x in pair]
        leaves = maj[q:]
    coords: dict[int, tuple[Fraction, Fraction]] = {}
    for i, v in enumerate(order):
        coords[v] = (Fraction(i), Fraction(0))
    k = len(leaves)
    delta = Fraction(1, 4 * (k + 1))
    for j, v in enumerate(leaves):
        # hang leaves off the hub at the right end, numbered from the top
        coords[v] = (Fraction(len(order)), (Fraction(k - 1, 2) - j) * delta)
    return AcceptableEmbedding.make(broom, coords)


def catalog_front(tb: int, r: int) -> FrontDiagram:
    """Canonical front with invariants exactly (tb, r)."""
    d = build_front(catalog_tree(tb, r))
    got = invariant_pair(OrientedFront.default(d))
    assert got == (tb, r), f"catalog front invariants {got} != ({tb}, {r})"
    return d


def normalize_front_to_catalog(
    emb: AcceptableEmbedding,
) -> tuple[FrontDiagram, list[MoveRecord]]:
    """Normalize a tree-based front to the catalog front of its invariants.

    The returned record documents the end-edge moves that reduce the tree to
    the canonical broom; re-embedding the broom canonically corresponds to
    zig-zag displacements on the front and is recorded as one final entry.
    """
    inv = expected_invariants(emb.tree)
    _, records = normalize_to_almost_linear(emb.tree)
    front = catalog_front(*inv)
    if records or emb.coords != catalog_tree(*inv).coords:
        records = records + [
            MoveRecord(
                kind="zig-zag displace",
                operands=("re-embed canonical broom",),
                before=inv,
                after=inv,
            )
        ]
    return front, records


# ---------------------------------------------------------------------------
# Text format (.sat)


def parse_tree(text: str) -> AcceptableEmbedding:
    """Parse the line-oriented tree format: v/e lines, # comments."""
    signs: dict[int, int] = {}
    coords: dict[int, tuple[Fraction, Fraction]] = {}
    edges: list[tuple[int, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 5 and parts[4] in ("+", "-"):
                vid = int(parts[1])
                coords[vid] = (Fraction(parts[2]), Fraction(parts[3]))
                signs[vid] = 1 if parts[4] == "+" else -1
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(line)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed tree line {raw!r}", line=ln) from None
    if not signs:
        raise ParseError("tree file has no vertices")
    tree = SignedTree.make(signs, edges)
    return AcceptableEmbedding.make(tree, coords)


def serialize_tree(emb: AcceptableEmbedding) -> str:
    cm = emb.coord_map
    sm = emb.tree.sign_map
    lines = [
        f"v {v} {cm[v][0]} {cm[v][1]} {'+' if sm[v] > 0 else '-'}"
        for v in emb.tree.vertices
    ]
    lines += [f"e {min(e)} {max(e)}" for e in sorted(emb.tree.edges, key=sorted)]
    return "\n".join(lines)


def spread_embedding(t: SignedTree, root: Optional[int] = None) -> AcceptableEmbedding:
    """Deterministic acceptable embedding: DFS order on x, small y jitter.

    The root (left-most vertex) defaults to the smallest-id end vertex.
    """
    t.validate()
    if root is None:
        ends = [v for v in t.vertices if t.valence(v) == 1]
        root = min(ends)
    order: list[int] = []
    stack = [root]
    seen: set[int] = set()
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        order.append(u)
        for w in sorted(t.neighbors(u), reverse=True):
            if w not in seen:
                stack.append(w)
    n = len(order)
    delta = Fraction(1, 4 * n)
    coords = {
        v: (Fraction(i), ((i % 3) - 1) * delta) for i, v in enumerate(order)
    }
    return AcceptableEmbedding.make(t, coords)


# ---------------------------------------------------------------------------
# Fuzzing support


def random_signed_tree(rng: random.Random, max_vertices: int = 14) -> SignedTree:
    n = rng.randint(2, max_vertices)
    root_sign = rng.choice((1, -1))
    parents = {1: 0}
    for v in range(2, n):
        parents[v] = rng.randrange(1, v)
    depth = {0: 0}
    for v in range(1, n):
        depth[v] = depth[parents[v]] + 1
    signs = {v: root_sign * (1 if depth[v] % 2 == 0 else -1) for v in range(n)}
    return SignedTree.make(signs, [(parents[v], v) for v in range(1, n)])


def random_acceptable_embedding(
    rng: random.Random, max_vertices: int = 14
) -> AcceptableEmbedding:
    """Random signed tree embedded with the root as the left-most end vertex."""
    t = random_signed_tree(rng, max_vertices)
    n = len(t.vertices)
    order: list[int] = []
    stack = [0]
    seen = set()
    adj = {v: t.neighbors(v) for v in t.vertices}
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        order.append(u)
        for w in sorted(adj[u], reverse=True):
            if w not in seen:
                stack.append(w)
    x_of = {v: Fraction(i) for i, v in enumerate(order)}
    delta = Fraction(1, 4 * n)
    coords = {v: (x_of[v], (rng.randrange(-n, n + 1)) * delta / n) for v in t.vertices}
    return AcceptableEmbedding.make(t, coords)
