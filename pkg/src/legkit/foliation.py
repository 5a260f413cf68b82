"""Combinatorial rewrite engine for disk characteristic foliations.

A FoliationState is the combinatorial shadow of the characteristic
foliation on a disk spanning a Legendrian unknot with invariants (tb, r):
a cyclic boundary sequence of singularities, an interior multiset, and
separatrix / arc-family edges.  Leaves other than separatrices are
implicit.  The standardization pipeline is

    init (alternating boundary) -> NAF -> reduced -> elliptic form

with the interior count identity, valid whenever the boundary is in NAF:

    e+ - h+ = (1 - tb + r) / 2,     e- - h- = (1 + tb - r) / 2

Rewrites carry explicit count deltas.  Interior eliminations change the
per-sign counts by (-1, -1), conversions and pair creations by (+1, +1),
so the identity differences are preserved.  The reduced -> elliptic step
absorbs each interior negative hyperbolic into a boundary negative
elliptic (flipping it to hyperbolic); that absorption is the one rewrite
that changes the negative-side difference, which is why the identity is
stated for NAF boundaries only.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .errors import (
    BadInvariants,
    BadLeaves,
    NotConnected,
    NotEllipticForm,
    PatternMismatch,
    SignMismatch,
    TightnessViolation,
)
from .fronts import in_unknot_range
from .trees import AcceptableEmbedding, SignedTree, canonical_broom, spread_embedding

ELLIPTIC = "e"
HYPERBOLIC = "h"
BOUNDARY = "boundary"
INTERIOR = "interior"


@dataclass(frozen=True)
class Singularity:
    ident: str
    sign: int  # +1 or -1
    kind: str  # ELLIPTIC or HYPERBOLIC
    locus: str  # BOUNDARY or INTERIOR

    def tag(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.kind}"


@dataclass(frozen=True)
class RewriteStep:
    """One logged rewrite with its count delta (over all loci, per sign/kind)."""

    rule: str
    operands: tuple
    delta: tuple[tuple[str, int], ...]  # e.g. (("e+", 1), ("h+", 1))

    def describe(self) -> str:
        d = " ".join(f"{k}{v:+d}" for k, v in self.delta) or "no count change"
        ops = ",".join(str(o) for o in self.operands)
        return f"{self.rule}({ops}): {d}"


@dataclass(frozen=True)
class SingularityCurve:
    ident: str
    sign: int
    form: str  # "curve" or "split"


@dataclass(frozen=True)
class FoliationState:
    tb: int
    r: int
    boundary: tuple[str, ...]  # ids in cyclic order
    sing: tuple[tuple[str, Singularity], ...]  # sorted (id, record)
    separatrices: frozenset[frozenset[str]]
    connections: frozenset[frozenset[str]]  # elliptic-elliptic arc families
    absorb_plan: tuple[tuple[str, str], ...]  # (interior h-, boundary e-) pairs
    curves: tuple[SingularityCurve, ...] = ()
    trace: tuple[RewriteStep, ...] = field(default=(), compare=False)

    @property
    def sing_map(self) -> dict[str, Singularity]:
        return dict(self.sing)

    def counts(self, locus: Optional[str] = None) -> dict[str, int]:
        out = {"e+": 0, "h+": 0, "e-": 0, "h-": 0}
        for _, s in self.sing:
            if locus is None or s.locus == locus:
                out[f"{s.kind}{'+' if s.sign > 0 else '-'}"] += 1
        return out

    def identity_differences(self, locus: Optional[str] = None) -> tuple[int, int]:
        c = self.counts(locus)
        return c["e+"] - c["h+"], c["e-"] - c["h-"]

    def is_naf(self) -> bool:
        sm = self.sing_map
        for b in self.boundary:
            s = sm[b]
            if s.sign > 0 and s.kind != HYPERBOLIC:
                return False
            if s.sign < 0 and s.kind != ELLIPTIC:
                return False
        return _alternating(self)

    def is_reduced(self) -> bool:
        c = self.counts(INTERIOR)
        return c["h+"] == 0 and c["e-"] == 0

    def is_elliptic_form(self) -> bool:
        c = self.counts(INTERIOR)
        return c["h+"] == 0 and c["h-"] == 0 and _alternating(self)

    def logged(self, step: RewriteStep) -> "FoliationState":
        return replace(self, trace=self.trace + (step,))


def _alternating(s: FoliationState) -> bool:
    sm = s.sing_map
    n = len(s.boundary)
    return all(sm[s.boundary[i]].sign != sm[s.boundary[(i + 1) % n]].sign for i in range(n))


def _delta(**kw: int) -> tuple[tuple[str, int], ...]:
    names = {"ep": "e+", "hp": "h+", "em": "e-", "hm": "h-"}
    return tuple((names[k], v) for k, v in kw.items() if v)


def _check_tight(sing: dict[str, Singularity], edges: Iterable[frozenset[str]]) -> None:
    """Reject separatrix graphs with a same-sign cycle (limit cycle seed)."""
    for sign in (1, -1):
        adj: dict[str, list[str]] = {}
        for e in edges:
            u, v = tuple(e)
            if sing[u].sign == sign and sing[v].sign == sign:
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        seen: dict[str, Optional[str]] = {}
        for start in adj:
            if start in seen:
                continue
            stack = [(start, None)]
            while stack:
                u, parent = stack.pop()
                if u in seen:
                    raise TightnessViolation(
                        f"same-sign separatrix cycle through {u}"
                    )
                seen[u] = parent
                for w in adj[u]:
                    if w != parent:
                        stack.append((w, u))


def interior_count_targets(tb: int, r: int) -> tuple[int, int]:
    """Reduced-form interior counts (e+, h-) = ((1-tb+r)/2, (-1-tb+r)/2)."""
    return (1 - tb + r) // 2, (-1 - tb + r) // 2


# ---------------------------------------------------------------------------
# State construction


def init_boundary(
    tb: int, r: int, boundary_kinds: Optional[Sequence[str]] = None
) -> FoliationState:
    """Boundary of 2|tb| alternating singularities plus a compensating interior.

    Default kinds are already NAF (positive hyperbolic, negative elliptic)
    and the interior is the reduced-form minimum.  Custom boundary kinds
    model the pre-standardization disk; the interior is then seeded so that
    to_naf followed by reduce_interior lands on the exact reduced counts.
    """
    if tb >= 0 or not in_unknot_range(tb, r):
        raise BadInvariants(f"tight pipeline needs (tb, r) in range, got ({tb}, {r})")
    n = -tb
    e_target, h_target = interior_count_targets(tb, r)

    sing: dict[str, Singularity] = {}
    boundary = []
    for i in range(2 * n):
        ident = f"b{i}"
        sign = 1 if i % 2 == 0 else -1
        if boundary_kinds is None:
            kind = HYPERBOLIC if sign > 0 else ELLIPTIC
        else:
            if len(boundary_kinds) != 2 * n:
                raise BadInvariants(
                    f"boundary_kinds must list {2 * n} kinds, got {len(boundary_kinds)}"
                )
            kind = boundary_kinds[i]
            if kind not in (ELLIPTIC, HYPERBOLIC):
                raise BadInvariants(f"bad kind {kind!r}")
        boundary.append(ident)
        sing[ident] = Singularity(ident, sign, kind, BOUNDARY)

    # pending NAF conversions for custom boundary kinds
    pend_pos = sum(
        1 for b in boundary if sing[b].sign > 0 and sing[b].kind == ELLIPTIC
    )
    pend_neg = sum(
        1 for b in boundary if sing[b].sign < 0 and sing[b].kind == HYPERBOLIC
    )
    seed = {
        "e+": max(0, e_target - 2 * pend_pos),
        "h+": max(0, 2 * pend_pos - e_target),
        "h-": max(0, h_target - 2 * pend_neg),
        "e-": max(0, 2 * pend_neg - h_target),
    }

    spine = [f"p{j}" for j in range(e_target)]
    hubs_h = [f"q{j}" for j in range(h_target)]
    for j, ident in enumerate(spine):
        if j < seed["e+"]:
            sing[ident] = Singularity(ident, 1, ELLIPTIC, INTERIOR)
    for j, ident in enumerate(hubs_h):
        if j < seed["h-"]:
            sing[ident] = Singularity(ident, -1, HYPERBOLIC, INTERIOR)
    for j in range(seed["h+"]):
        ident = f"x{j}"
        sing[ident] = Singularity(ident, 1, HYPERBOLIC, INTERIOR)
    for j in range(seed["e-"]):
        ident = f"y{j}"
        sing[ident] = Singularity(ident, -1, ELLIPTIC, INTERIOR)

    # Separatrices: reduced Legendrian tree (spine alternating with interior
    # negative hyperbolics) plus boundary attachments.
    seps: set[frozenset[str]] = set()
    present = {i for i in sing}
    for j in range(h_target):
        q, a, b = f"q{j}", f"p{j}", f"p{j + 1}"
        if {q, a} <= present:
            seps.add(frozenset((q, a)))
        if {q, b} <= present:
            seps.add(frozenset((q, b)))
    pos_boundary = [b for b in boundary if sing[b].sign > 0]
    for i, b in enumerate(pos_boundary):
        p = f"p{i % max(1, e_target)}"
        if p in present:
            seps.add(frozenset((b, p)))

    # Absorption plan: each interior negative hyperbolic is matched with the
    # boundary negative elliptic it will absorb into during elliptic form.
    neg_boundary = [b for b in boundary if sing[b].sign < 0]
    absorb_plan = tuple(
        (f"q{j}", neg_boundary[len(neg_boundary) - 1 - j]) for j in range(h_target)
    )
    for q, m in absorb_plan:
        if q in present:
            seps.add(frozenset((q, m)))

    # Arc-family connections are only meaningful in elliptic form; they are
    # built by to_elliptic_form from whatever singularities survive.
    connections: frozenset = frozenset()

    state = FoliationState(
        tb=tb,
        r=r,
        boundary=tuple(boundary),
        sing=tuple(sorted(sing.items())),
        separatrices=frozenset(seps),
        connections=connections,
        absorb_plan=absorb_plan,
        trace=(),
    )
    _check_tight(state.sing_map, state.separatrices)
    return state


def _with_sing(state: FoliationState, sing: dict[str, Singularity]) -> FoliationState:
    return replace(state, sing=tuple(sorted(sing.items())))


def _fresh_id(sing: dict[str, Singularity], prefix: str) -> str:
    k = 0
    while f"{prefix}{k}" in sing:
        k += 1
    return f"{prefix}{k}"


# ---------------------------------------------------------------------------
# Atomic rewrites


def eliminate(state: FoliationState, e_id: str, h_id: str) -> FoliationState:
    """Cancel a same-sign elliptic/hyperbolic pair joined by a separatrix."""
    sm = state.sing_map
    if e_id not in sm or h_id not in sm:
        raise NotConnected(f"unknown singularities {e_id}, {h_id}")
    e, h = sm[e_id], sm[h_id]
    if e.kind != ELLIPTIC or h.kind != HYPERBOLIC:
        raise SignMismatch(f"eliminate needs (elliptic, hyperbolic), got ({e.kind}, {h.kind})")
    if e.sign != h.sign:
        raise SignMismatch("eliminate needs a same-sign pair")
    if frozenset((e_id, h_id)) not in state.separatrices:
        raise NotConnected(f"{e_id} and {h_id} share no separatrix")
    sm.pop(e_id)
    sm.pop(h_id)
    seps = frozenset(s for s in state.separatrices if not (s & {e_id, h_id}))
    conns = frozenset(c for c in state.connections if not (c & {e_id, h_id}))
    d = _delta(ep=-1, hp=-1) if e.sign > 0 else _delta(em=-1, hm=-1)
    out = replace(_with_sing(state, sm), separatrices=seps, connections=conns)
    return out.logged(RewriteStep("eliminate", (e_id, h_id), d))


def convert(state: FoliationState, p_id: str, gamma, tau) -> FoliationState:
    """Elliptic-hyperbolic conversion at p along transversal leaves gamma, tau.

    p's kind flips and two singularities of p's original kind and sign are
    created on gamma; the per-sign count delta is (+1, +1).
    """
    if gamma == tau:
        raise BadLeaves("gamma and tau must be distinct leaves")
    sm = state.sing_map
    if p_id not in sm:
        raise BadLeaves(f"unknown singularity {p_id}")
    p = sm[p_id]
    new_kind = HYPERBOLIC if p.kind == ELLIPTIC else ELLIPTIC
    sm[p_id] = replace(p, kind=new_kind)
    prefix = "c" if p.kind == ELLIPTIC else "d"
    made = []
    for _ in range(2):
        ident = _fresh_id(sm, prefix)
        sm[ident] = Singularity(ident, p.sign, p.kind, INTERIOR)
        made.append(ident)
    seps = set(state.separatrices)
    for ident in made:
        seps.add(frozenset((ident, p_id)))
    _check_tight(sm, seps)
    d = _delta(ep=1, hp=1) if p.sign > 0 else _delta(em=1, hm=1)
    out = replace(_with_sing(state, sm), separatrices=frozenset(seps))
    return out.logged(RewriteStep("convert", (p_id, gamma, tau), d))


def create_pair(state: FoliationState, leaf, sign: int) -> FoliationState:
    """Create an elliptic/hyperbolic pair of the given sign on a leaf."""
    sm = state.sing_map
    e_id = _fresh_id(sm, "ce")
    h_id = _fresh_id(sm, "ch")
    sm[e_id] = Singularity(e_id, sign, ELLIPTIC, INTERIOR)
    sm[h_id] = Singularity(h_id, sign, HYPERBOLIC, INTERIOR)
    seps = set(state.separatrices)
    seps.add(frozenset((e_id, h_id)))
    _check_tight(sm, seps)
    d = _delta(ep=1, hp=1) if sign > 0 else _delta(em=1, hm=1)
    out = replace(_with_sing(state, sm), separatrices=frozenset(seps))
    return out.logged(RewriteStep("create_pair", (leaf, sign), d))


def rewire(
    state: FoliationState,
    add: Optional[tuple[str, str]] = None,
    remove: Optional[tuple[str, str]] = None,
) -> FoliationState:
    """Break or re-route a separatrix connection; count delta zero."""
    seps = set(state.separatrices)
    if remove is not None:
        edge = frozenset(remove)
        if edge not in seps:
            raise NotConnected(f"no separatrix {remove}")
        seps.discard(edge)
    if add is not None:
        sm = state.sing_map
        if not set(add) <= set(sm):
            raise NotConnected(f"unknown endpoint in {add}")
        seps.add(frozenset(add))
        _check_tight(sm, seps)
    out = replace(state, separatrices=frozenset(seps))
    return out.logged(RewriteStep("rewire", (add, remove), ()))


def singularity_curve_move(
    state: FoliationState, segment: str, direction: str
) -> FoliationState:
    """Toggle a singularity curve between its merged and split local forms."""
    if direction not in ("split", "merge"):
        raise PatternMismatch(f"direction must be 'split' or 'merge', got {direction!r}")
    for i, c in enumerate(state.curves):
        if c.ident == segment:
            want = "curve" if direction == "split" else "split"
            if c.form != want:
                raise PatternMismatch(
                    f"curve {segment} is in {c.form!r} form, cannot {direction}"
                )
            new = SingularityCurve(c.ident, c.sign, "split" if direction == "split" else "curve")
            curves = state.curves[:i] + (new,) + state.curves[i + 1 :]
            out = replace(state, curves=curves)
            return out.logged(RewriteStep("curve_move", (segment, direction), ()))
    raise PatternMismatch(f"no singularity curve {segment!r}")


def add_singularity_curve(state: FoliationState, ident: str, sign: int) -> FoliationState:
    """Introduce a singularity curve record (non-generic configuration)."""
    curves = state.curves + (SingularityCurve(ident, sign, "curve"),)
    return replace(state, curves=curves)


# ---------------------------------------------------------------------------
# Pipeline stages


def to_naf(state: FoliationState) -> FoliationState:
    """Convert boundary singularities until positives are hyperbolic, negatives elliptic."""
    if not _alternating(state):
        raise PatternMismatch("boundary signs must alternate")
    cur = state
    for b in state.boundary:
        s = cur.sing_map[b]
        if (s.sign > 0 and s.kind == ELLIPTIC) or (s.sign < 0 and s.kind == HYPERBOLIC):
            sm = cur.sing_map
            sm[b] = replace(s, kind=HYPERBOLIC if s.sign > 0 else ELLIPTIC)
            made = []
            prefix = "c" if s.kind == ELLIPTIC else "d"
            for _ in range(2):
                ident = _fresh_id(sm, prefix)
                sm[ident] = Singularity(ident, s.sign, s.kind, INTERIOR)
                made.append(ident)
            seps = set(cur.separatrices)
            for ident in made:
                seps.add(frozenset((ident, b)))
            d = _delta(ep=1, hp=1) if s.sign > 0 else _delta(em=1, hm=1)
            cur = replace(_with_sing(cur, sm), separatrices=frozenset(seps))
            cur = cur.logged(RewriteStep("convert", (b, "collar-leaf", "L"), d))
    assert cur.is_naf()
    return cur


def reduce_interior(state: FoliationState) -> FoliationState:
    """Eliminate interior pairs until only positive elliptic and negative hyperbolic remain.

    Requires NAF boundary.  Uses eliminations only, with separatrix rewiring
    (hyperbolic-connection breaking) to put each doomed pair on a shared
    separatrix first.  Lands exactly on the lem-count targets.
    """
    if not state.is_naf():
        raise PatternMismatch("reduce_interior needs a NAF boundary")
    cur = state

    def doomed(kind: str, sign: int, keep: int) -> list[str]:
        ids = sorted(
            i
            for i, s in cur.sing
            if s.locus == INTERIOR and s.kind == kind and s.sign == sign
        )
        # spine/hub ids (p*, q*) are the canonical survivors
        canon = [i for i in ids if i[0] in "pq"]
        extra = [i for i in ids if i[0] not in "pq"]
        survivors = (canon + extra)[:keep]
        return [i for i in ids if i not in survivors]

    e_target, h_target = interior_count_targets(cur.tb, cur.r)
    for sign, e_keep, h_keep in ((1, e_target, 0), (-1, 0, h_target)):
        while True:
            es = doomed(ELLIPTIC, sign, e_keep)
            hs = doomed(HYPERBOLIC, sign, h_keep)
            if not es and not hs:
                break
            assert es and hs, "interior counts cannot reach the reduced targets"
            e_id, h_id = es[0], hs[0]
            if frozenset((e_id, h_id)) not in cur.separatrices:
                cur = rewire(cur, add=(e_id, h_id))
            cur = eliminate(cur, e_id, h_id)
    assert cur.counts(INTERIOR) == {
        "e+": e_target,
        "h+": 0,
        "e-": 0,
        "h-": h_target,
    }
    return cur


@dataclass(frozen=True)
class Region:
    tag: str  # "type(a)" | "type(b)" | "semi-type(a)"
    members: tuple[str, ...]


@dataclass(frozen=True)
class RegionDecomposition:
    regions: tuple[Region, ...]

    def count(self, tag: str) -> int:
        return sum(1 for r in self.regions if r.tag == tag)


def _decompose(state: FoliationState) -> RegionDecomposition:
    sm = state.sing_map
    regions: list[Region] = []
    for c in sorted(state.connections, key=sorted):
        regions.append(Region("type(b)", tuple(sorted(c))))
    n = len(state.boundary)
    hyp_ell = 0
    for i in range(n):
        a, b = state.boundary[i], state.boundary[(i + 1) % n]
        ka, kb = sm[a].kind, sm[b].kind
        if ka == HYPERBOLIC and kb == HYPERBOLIC:
            regions.append(Region("type(a)", (a, b)))
        elif HYPERBOLIC in (ka, kb):
            hyp_ell += 1
    n_type_b = len([r for r in regions if r.tag == "type(b)"])
    for k in range(max(0, hyp_ell - n_type_b)):
        regions.append(Region("semi-type(a)", (f"sector{k}",)))
    return RegionDecomposition(tuple(regions))


def to_elliptic_form(state: FoliationState) -> tuple[FoliationState, RegionDecomposition]:
    """Absorb interior negative hyperbolics into boundary negative elliptics.

    Each absorption flips the boundary point to hyperbolic and removes the
    interior point; afterwards the interior is all-elliptic and the
    connection graph is the extended-skeleton tree.  Idempotent on states
    already in elliptic form.
    """
    if state.is_elliptic_form() and state.connections:
        return state, _decompose(state)
    if not (state.is_naf() and state.is_reduced()):
        raise PatternMismatch("to_elliptic_form needs a reduced state with NAF boundary")
    cur = state
    sm = cur.sing_map
    doomed_h = sorted(i for i, s in cur.sing if s.locus == INTERIOR and s.kind == HYPERBOLIC)
    neg_boundary = [b for b in cur.boundary if sm[b].sign < 0]
    for q, m in zip(doomed_h, reversed(neg_boundary)):
        if frozenset((q, m)) not in cur.separatrices:
            cur = rewire(cur, add=(q, m))
        sm = cur.sing_map
        sm[m] = replace(sm[m], kind=HYPERBOLIC)
        sm.pop(q)
        seps = frozenset(s for s in cur.separatrices if q not in s)
        cur = replace(_with_sing(cur, sm), separatrices=seps)
        cur = cur.logged(RewriteStep("absorb", (q, m), _delta(em=-1)))
    # the surviving elliptics assemble into the extended-skeleton broom
    sm = cur.sing_map
    spine = sorted(i for i, s in cur.sing if s.locus == INTERIOR and s.kind == ELLIPTIC)
    leaves = [b for b in cur.boundary if sm[b].sign < 0 and sm[b].kind == ELLIPTIC]
    ids = spine + leaves
    signs = [sm[v].sign for v in ids]
    cur = replace(cur, connections=frozenset(canonical_broom(signs, ids).edges))
    assert cur.is_elliptic_form()
    return cur, _decompose(cur)


# ---------------------------------------------------------------------------
# Skeleton extraction


@dataclass(frozen=True)
class SkeletonTree:
    """Extended skeleton: a signed tree tagged with interior/boundary vertices."""

    tree: SignedTree
    interior_vertices: frozenset[str]
    boundary_vertices: frozenset[str]
    ids: tuple[str, ...]  # original singularity id per tree vertex index

    def embedding(self) -> AcceptableEmbedding:
        return spread_embedding(self.tree)


def extract_skeleton(state: FoliationState) -> SkeletonTree:
    """The extended skeleton of an elliptic-form state, as a signed tree."""
    if not state.is_elliptic_form():
        raise NotEllipticForm("extract_skeleton needs an elliptic-form state")
    sm = state.sing_map
    verts = sorted({v for c in state.connections for v in c})
    index = {v: k for k, v in enumerate(verts)}
    signs = {index[v]: sm[v].sign for v in verts}
    edges = [(index[u], index[v]) for u, v in (tuple(c) for c in state.connections)]
    tree = SignedTree.make(signs, edges)
    interior = frozenset(v for v in verts if sm[v].locus == INTERIOR)
    boundary = frozenset(v for v in verts if sm[v].locus == BOUNDARY)
    return SkeletonTree(
        tree=tree,
        interior_vertices=interior,
        boundary_vertices=boundary,
        ids=tuple(verts),
    )


def run_pipeline(tb: int, r: int) -> tuple[FoliationState, RegionDecomposition, SkeletonTree]:
    """init -> NAF -> reduced -> elliptic form -> skeleton, with full trace."""
    state = init_boundary(tb, r)
    state = to_naf(state)
    state = reduce_interior(state)
    state, regions = to_elliptic_form(state)
    return state, regions, extract_skeleton(state)


# ---------------------------------------------------------------------------
# Text dump


def dump_state(state: FoliationState) -> str:
    """Deterministic text listing boundary cycle, interior set, and edges."""
    sm = state.sing_map
    lines = [f"tb {state.tb} r {state.r}"]
    lines.append("boundary " + " ".join(f"{b}:{sm[b].tag()}" for b in state.boundary))
    interior = sorted(i for i, s in state.sing if s.locus == INTERIOR)
    lines.append("interior " + " ".join(f"{i}:{sm[i].tag()}" for i in interior))
    for e in sorted(state.separatrices, key=sorted):
        u, v = sorted(e)
        lines.append(f"separatrix {u}-{v}")
    for c in sorted(state.connections, key=sorted):
        u, v = sorted(c)
        lines.append(f"connection {u}-{v}")
    for c in state.curves:
        lines.append(f"curve {c.ident}:{'+' if c.sign > 0 else '-'}:{c.form}")
    return "\n".join(lines)
