"""Event-based combinatorial model of Legendrian front diagrams.

A front is scanned left to right as a sequence of events acting on a stack
of strands (1-based positions, counted from the bottom):

    L p   left cusp: inserts two strands at positions p, p+1
    R p   right cusp: removes strands p, p+1 (they join at the cusp)
    X p   crossing: strands p, p+1 cross transversally

A closed diagram starts and ends with zero strands.  Arcs are maximal
strand segments between events; tracing arc connectivity through cusps and
crossings decomposes the diagram into components and orients them.  The
classical invariants are computed exactly from the oriented combinatorics:

    tb = -sum(or(p)) - (1/2) * #cusps        (self-crossings only)
    r  = (1/2) * sum(kappa(p))               (cusps only)

where or(p) = +1 iff the rays emanating from a crossing leave on opposite
sides of the vertical line through it, and kappa(p) = +1 iff the ray
emanating from a cusp lies above the ray entering it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .errors import (
    BadLocator,
    InvalidPosition,
    NoZigzag,
    NotClosed,
    OpenDiagram,
    ParseError,
    SingleComponent,
)

LEFT = "L"
RIGHT = "R"
CROSS = "X"

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class FrontEvent:
    """One event of a front diagram: kind in {L, R, X}, 1-based position."""

    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in (LEFT, RIGHT, CROSS):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.position < 1:
            raise InvalidPosition(f"position {self.position} must be >= 1")

    def __str__(self):
        return f"{self.kind} {self.position}"


@dataclass(frozen=True)
class FrontDiagram:
    """A validated closed front diagram.

    ``events`` is the left-to-right event sequence; ``orient_overrides``
    carries optional per-component orientation flips parsed from the text
    format (it does not affect diagram equality semantics beyond tuple
    equality, and is empty for programmatically built diagrams).
    """

    events: tuple[FrontEvent, ...]
    orient_overrides: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = 0
        for k, ev in enumerate(self.events):
            if ev.kind == LEFT:
                if not 1 <= ev.position <= n + 1:
                    raise InvalidPosition(
                        f"event {k + 1} ({ev}): left cusp position must be in 1..{n + 1}"
                    )
                n += 2
            else:
                if not 1 <= ev.position <= n - 1:
                    raise InvalidPosition(
                        f"event {k + 1} ({ev}): position must be in 1..{n - 1} "
                        f"({n} strands)"
                    )
                if ev.kind == RIGHT:
                    n -= 2
        if n != 0:
            raise OpenDiagram(f"strand count {n} nonzero after last event")

    @property
    def strand_profile(self) -> tuple[int, ...]:
        """Strand counts n_0 .. n_m (n_j = count after j events)."""
        prof = [0]
        n = 0
        for ev in self.events:
            n += 2 if ev.kind == LEFT else (-2 if ev.kind == RIGHT else 0)
            prof.append(n)
        return tuple(prof)

    def __str__(self):
        return serialize_front(self)


@dataclass(frozen=True)
class Arc:
    """Maximal strand segment between events.

    ``born``/``died`` are 0-based event indices; ``role`` is 0 for the lower
    strand of the creating pair, 1 for the upper.  Arcs live in slots
    born+1 .. died (slot j = gap after j events).
    """

    index: int
    born: int
    role: int
    died: int = field(compare=False)


@dataclass(frozen=True)
class CuspRecord:
    event: int
    kind: str  # LEFT or RIGHT
    lower: int  # arc index
    upper: int


@dataclass(frozen=True)
class CrossingRecord:
    event: int
    in_lower: int
    in_upper: int
    out_lower: int
    out_upper: int


@dataclass(frozen=True)
class ComponentDecomposition:
    """Arcs, per-arc component ids, cusp pairings and crossing incidences."""

    arcs: tuple[Arc, ...]
    component_of: tuple[int, ...]  # arc index -> component id
    n_components: int
    cusps: tuple[CuspRecord, ...]
    crossings: tuple[CrossingRecord, ...]
    stacks: tuple[tuple[int, ...], ...]  # stacks[j] = arc ids after j events

    def arcs_of(self, comp: int) -> list[int]:
        return [a.index for a in self.arcs if self.component_of[a.index] == comp]

    def position_in_slot(self, arc: int, slot: int) -> int:
        """1-based position of an arc in a given slot."""
        return self.stacks[slot].index(arc) + 1


def trace_components(d: FrontDiagram) -> ComponentDecomposition:
    """Scan the event stack, building arcs, incidences and components."""
    return _trace(d)


@lru_cache(maxsize=4096)
def _trace(d: FrontDiagram) -> ComponentDecomposition:
    arcs: list[Arc] = []
    cusps: list[CuspRecord] = []
    crossings: list[CrossingRecord] = []
    stack: list[int] = []
    stacks: list[tuple[int, ...]] = [()]
    parent: list[int] = []

    def new_arc(born, role):
        idx = len(arcs)
        arcs.append(Arc(index=idx, born=born, role=role, died=-1))
        parent.append(idx)
        return idx

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    def kill(idx, at):
        arcs[idx] = Arc(index=idx, born=arcs[idx].born, role=arcs[idx].role, died=at)

    for j, ev in enumerate(d.events):
        p = ev.position
        if ev.kind == LEFT:
            lo = new_arc(j, 0)
            hi = new_arc(j, 1)
            stack[p - 1 : p - 1] = [lo, hi]
            cusps.append(CuspRecord(event=j, kind=LEFT, lower=lo, upper=hi))
            union(lo, hi)
        elif ev.kind == RIGHT:
            lo, hi = stack[p - 1], stack[p]
            del stack[p - 1 : p + 1]
            kill(lo, j)
            kill(hi, j)
            cusps.append(CuspRecord(event=j, kind=RIGHT, lower=lo, upper=hi))
            union(lo, hi)
        else:
            a, b = stack[p - 1], stack[p]
            kill(a, j)
            kill(b, j)
            c = new_arc(j, 0)
            dd = new_arc(j, 1)
            stack[p - 1], stack[p] = c, dd
            crossings.append(
                CrossingRecord(event=j, in_lower=a, in_upper=b, out_lower=c, out_upper=dd)
            )
            union(a, dd)  # lower-in continues as upper-out
            union(b, c)
        stacks.append(tuple(stack))

    roots = sorted({find(i) for i in range(len(arcs))})
    comp_id = {r: k for k, r in enumerate(roots)}
    component_of = tuple(comp_id[find(i)] for i in range(len(arcs)))
    return ComponentDecomposition(
        arcs=tuple(arcs),
        component_of=component_of,
        n_components=len(roots),
        cusps=tuple(cusps),
        crossings=tuple(crossings),
        stacks=tuple(stacks),
    )


# ---------------------------------------------------------------------------
# Orientation


@dataclass(frozen=True)
class OrientedFront:
    """A front diagram with a traversal orientation per component.

    The default orientation directs the lowest-indexed arc of each component
    left-to-right; ``reversed_components`` flips the named components.
    """

    diagram: FrontDiagram
    reversed_components: frozenset[int] = frozenset()

    @staticmethod
    def default(d: FrontDiagram) -> "OrientedFront":
        rev = frozenset(c for c, s in d.orient_overrides if s < 0)
        return OrientedFront(d, rev)

    @property
    def trace(self) -> ComponentDecomposition:
        return trace_components(self.diagram)

    def arc_directions(self) -> dict[int, bool]:
        """Map arc index -> True if traversed rightward."""
        base = _default_directions(self.diagram)
        if not self.reversed_components:
            return dict(base)
        tr = self.trace
        return {
            a: (not v if tr.component_of[a] in self.reversed_components else v)
            for a, v in base.items()
        }

    def reverse(self, comp: int) -> "OrientedFront":
        return OrientedFront(self.diagram, self.reversed_components ^ {comp})


@lru_cache(maxsize=4096)
def _default_directions(d: FrontDiagram) -> dict[int, bool]:
    tr = _trace(d)
    n = len(tr.arcs)
    dirs: dict[int, bool] = {}
    # Constraint graph: cusps flip direction, crossings preserve it.
    adj: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(n)}
    for c in tr.cusps:
        adj[c.lower].append((c.upper, True))
        adj[c.upper].append((c.lower, True))
    for x in tr.crossings:
        for u, v in ((x.in_lower, x.out_upper), (x.in_upper, x.out_lower)):
            adj[u].append((v, False))
            adj[v].append((u, False))
    for comp in range(tr.n_components):
        anchor = min(tr.arcs_of(comp))
        dirs[anchor] = True
        frontier = [anchor]
        while frontier:
            u = frontier.pop()
            for v, flip in adj[u]:
                want = (not dirs[u]) if flip else dirs[u]
                if v in dirs:
                    if dirs[v] != want:
                        raise NotClosed(f"inconsistent traversal in component {comp}")
                else:
                    dirs[v] = want
                    frontier.append(v)
    return dirs


def cusp_kappa(of: OrientedFront, cusp: CuspRecord) -> int:
    """kappa = +1 iff the ray emanating from the cusp lies above the entering ray."""
    dirs = of.arc_directions()
    if cusp.kind == LEFT:
        # emanating ray = the rightward arc
        return 1 if dirs[cusp.upper] else -1
    # right cusp: emanating ray = the leftward arc
    return 1 if dirs[cusp.lower] else -1


def crossing_or(of: OrientedFront, crossing: CrossingRecord) -> int:
    """or = +1 iff the two emanating rays leave on opposite sides of the vertical."""
    dirs = of.arc_directions()
    return 1 if dirs[crossing.in_lower] != dirs[crossing.in_upper] else -1


def crossing_sign(of: OrientedFront, crossing: CrossingRecord) -> int:
    """Knot-theoretic crossing sign; equals -or under the lesser-slope-over rule.

    With contact form dz - y dx the over-strand at a front crossing is the
    branch of lesser slope (smaller y, nearer the viewer at y = -infinity).
    det[t_over, t_under] = d_over * d_under * (y_under - y_over) with
    y_under > y_over, so the sign is +1 exactly when both strands run the
    same horizontal way, i.e. -or.
    """
    return -crossing_or(of, crossing)


def _check_component(of: OrientedFront, comp: int) -> None:
    tr = of.trace
    if not 0 <= comp < tr.n_components:
        raise NotClosed(f"no component {comp} (diagram has {tr.n_components})")


def thurston_bennequin(of: OrientedFront, comp: int = 0) -> int:
    """tb of one component: -sum or(p) over self-crossings - half the cusp count."""
    _check_component(of, comp)
    tr = of.trace
    cof = tr.component_of
    or_sum = sum(
        crossing_or(of, x)
        for x in tr.crossings
        if cof[x.in_lower] == comp and cof[x.in_upper] == comp
    )
    n_cusps = sum(1 for c in tr.cusps if cof[c.lower] == comp)
    assert n_cusps % 2 == 0
    return -or_sum - n_cusps // 2


def rotation_number(of: OrientedFront, comp: int = 0) -> int:
    """r of one component: half the signed cusp count; negates under reversal."""
    _check_component(of, comp)
    tr = of.trace
    total = sum(cusp_kappa(of, c) for c in tr.cusps if tr.component_of[c.lower] == comp)
    assert total % 2 == 0
    return total // 2


def invariant_pair(of: OrientedFront, comp: int = 0) -> tuple[int, int]:
    return thurston_bennequin(of, comp), rotation_number(of, comp)


def linking_matrix(of: OrientedFront) -> list[list[Optional[int]]]:
    """Pairwise linking numbers; symmetric, diagonal left as None."""
    tr = of.trace
    k = tr.n_components
    if k < 2:
        raise SingleComponent("linking matrix needs at least 2 components")
    sums = [[0] * k for _ in range(k)]
    for x in tr.crossings:
        i = tr.component_of[x.in_lower]
        j = tr.component_of[x.in_upper]
        if i != j:
            s = crossing_sign(of, x)
            sums[i][j] += s
            sums[j][i] += s
    out: list[list[Optional[int]]] = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j:
                assert sums[i][j] % 2 == 0, "inter-component signs must sum evenly"
                out[i][j] = sums[i][j] // 2
    return out


def transverse_self_linking(of: OrientedFront, comp: int = 0, pushoff: str = "+") -> int:
    """Self-linking of the transverse pushoff: tb - r for '+', tb + r for '-'."""
    tb, r = invariant_pair(of, comp)
    if pushoff == "+":
        return tb - r
    if pushoff == "-":
        return tb + r
    raise ValueError(f"pushoff must be '+' or '-', got {pushoff!r}")


# ---------------------------------------------------------------------------
# Range oracles


def check_bennequin(tb: int, r: int, chi: int = 1) -> bool:
    """Bennequin inequality tb <= -chi(F) - |r| (chi = 1 for a disk)."""
    return tb <= -chi - abs(r)


def check_parity(tb: int, r: int) -> bool:
    """tb + r must be odd for a closed Legendrian knot."""
    return (tb + r) % 2 == 1


def in_unknot_range(tb: int, r: int) -> bool:
    """True iff (tb, r) = (-|r| - 2k - 1, r) for some k >= 0."""
    return check_parity(tb, r) and tb <= -abs(r) - 1


# ---------------------------------------------------------------------------
# Zig-zags (stabilization)


def _arc_direction(d: FrontDiagram, arc: int) -> bool:
    return _default_directions(d)[arc]


def _zigzag_events(p: int, option: str) -> list[FrontEvent]:
    # option A: kink below the strand at p; option B: kink above.
    if option == "A":
        return [FrontEvent(LEFT, p), FrontEvent(RIGHT, p + 1)]
    return [FrontEvent(LEFT, p + 1), FrontEvent(RIGHT, p)]


def insert_zigzag(d: FrontDiagram, arc: int, direction: str) -> FrontDiagram:
    """Insert a two-cusp zig-zag on an arc.

    Direction is the oriented sense under the default orientation: "up"
    yields (tb, r) -> (tb - 1, r + 1), "down" yields (tb - 1, r - 1).
    """
    if direction not in (UP, DOWN):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    tr = trace_components(d)
    if not 0 <= arc < len(tr.arcs):
        raise BadLocator(f"no arc {arc} (diagram has {len(tr.arcs)} arcs)")
    rec = tr.arcs[arc]
    slot = rec.born + 1
    p = tr.position_in_slot(arc, slot)
    rightward = _arc_direction(d, arc)
    # Option B raises r on a rightward strand, option A lowers it; the
    # roles swap on a leftward strand.
    if (direction == UP) == rightward:
        option = "B"
    else:
        option = "A"
    events = list(d.events)
    events[slot:slot] = _zigzag_events(p, option)
    return FrontDiagram(tuple(events))


@dataclass(frozen=True)
class Zigzag:
    """A detected zig-zag: consecutive (L, R) events forming a kink."""

    event: int  # index of the L event
    option: str  # "A" (kink below) or "B" (kink above)
    carrier_in: int  # arc entering the kink
    carrier_out: int  # arc leaving the kink
    kink_arcs: tuple[int, int]


def find_zigzags(d: FrontDiagram) -> list[Zigzag]:
    tr = trace_components(d)
    by_birth = {}
    for a in tr.arcs:
        by_birth.setdefault(a.born, {})[a.role] = a.index
    out = []
    for i in range(len(d.events) - 1):
        e1, e2 = d.events[i], d.events[i + 1]
        if e1.kind != LEFT or e2.kind != RIGHT:
            continue
        lo, hi = by_birth[i][0], by_birth[i][1]
        if e2.position == e1.position + 1:
            # option A: R consumes (upper kink arc, original strand)
            stack = tr.stacks[i + 1]
            orig = stack[e2.position]  # strand above the kink upper
            if tr.arcs[hi].died == i + 1 and tr.arcs[orig].died == i + 1:
                out.append(
                    Zigzag(event=i, option="A", carrier_in=orig, carrier_out=lo,
                           kink_arcs=(lo, hi))
                )
        elif e2.position == e1.position - 1:
            # option B: R consumes (original strand, lower kink arc)
            stack = tr.stacks[i + 1]
            orig = stack[e2.position - 1]
            if tr.arcs[lo].died == i + 1 and tr.arcs[orig].died == i + 1:
                out.append(
                    Zigzag(event=i, option="B", carrier_in=orig, carrier_out=hi,
                           kink_arcs=(lo, hi))
                )
    return out


def zigzag_direction(d: FrontDiagram, z: Zigzag) -> str:
    """Oriented direction of a zig-zag under the default orientation."""
    rightward = _arc_direction(d, z.carrier_in)
    if z.option == "B":
        return UP if rightward else DOWN
    return DOWN if rightward else UP


def displace_zigzag(d: FrontDiagram, from_arc: int, to_arc: int) -> FrontDiagram:
    """Move a zig-zag from one arc to another, preserving (tb, r) exactly."""
    tr = trace_components(d)
    if not 0 <= from_arc < len(tr.arcs) or not 0 <= to_arc < len(tr.arcs):
        raise BadLocator("arc locator out of range")
    zigs = [
        z
        for z in find_zigzags(d)
        if from_arc in z.kink_arcs or from_arc in (z.carrier_in, z.carrier_out)
    ]
    if not zigs:
        raise NoZigzag(f"arc {from_arc} carries no zig-zag")
    z = zigs[0]
    if to_arc in z.kink_arcs or to_arc in (z.carrier_in, z.carrier_out):
        raise BadLocator("target arc is part of the zig-zag being moved")
    direction = zigzag_direction(d, z)
    events = list(d.events)
    del events[z.event : z.event + 2]
    reduced = FrontDiagram(tuple(events))
    # Re-identify the target arc by (birth event, role) in the reduced diagram.
    tgt = tr.arcs[to_arc]
    born = tgt.born if tgt.born < z.event else tgt.born - 2
    red_tr = trace_components(reduced)
    matches = [a.index for a in red_tr.arcs if a.born == born and a.role == tgt.role]
    if not matches:
        raise BadLocator("target arc does not survive zig-zag removal")
    return insert_zigzag(reduced, matches[0], direction)


# ---------------------------------------------------------------------------
# Text format (.lfd)


def parse_front(text: str) -> FrontDiagram:
    """Parse the line-oriented front format (L/R/X events, orient lines)."""
    events = []
    overrides = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "orient":
            if len(parts) != 3 or parts[2] not in ("+", "-"):
                raise ParseError(f"bad orient line {raw!r}", line=ln)
            try:
                comp = int(parts[1])
            except ValueError:
                raise ParseError(f"bad component index {parts[1]!r}", line=ln) from None
            overrides.append((comp, 1 if parts[2] == "+" else -1))
            continue
        if len(parts) != 2 or parts[0] not in (LEFT, RIGHT, CROSS):
            raise ParseError(f"malformed event line {raw!r}", line=ln)
        try:
            pos = int(parts[1])
        except ValueError:
            raise ParseError(f"bad position {parts[1]!r}", line=ln) from None
        if pos < 1:
            raise InvalidPosition(f"line {ln}: position {pos} must be >= 1")
        events.append(FrontEvent(parts[0], pos))
    if not events:
        raise ParseError("empty diagram has no component")
    return FrontDiagram(tuple(events), tuple(overrides))


def serialize_front(d: FrontDiagram) -> str:
    """One event per line, in order; inverse of parse_front."""
    lines = [f"{ev.kind} {ev.position}" for ev in d.events]
    lines.extend(
        f"orient {c} {'+' if s > 0 else '-'}" for c, s in d.orient_overrides
    )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Fuzzing support (used by tests and the CLI fuzz command)


def random_closed_front(rng: random.Random, max_events: int = 24) -> FrontDiagram:
    """Generate a random valid closed front diagram (any component count)."""
    events = []
    n = 0
    budget = max(2, max_events)
    while True:
        room = budget - len(events)
        if n == 0:
            if events and (room < 2 or rng.random() < 0.3):
                break
            events.append(FrontEvent(LEFT, 1))
            n = 2
            continue
        # must be able to close: capping takes n/2 right cusps
        must_close = room <= n // 2 + 1
        choices = [RIGHT]
        if not must_close:
            choices += [LEFT, LEFT, CROSS, CROSS]
        kind = rng.choice(choices)
        if kind == LEFT:
            events.append(FrontEvent(LEFT, rng.randint(1, n + 1)))
            n += 2
        elif kind == CROSS:
            events.append(FrontEvent(CROSS, rng.randint(1, n - 1)))
        else:
            events.append(FrontEvent(RIGHT, rng.randint(1, n - 1)))
            n -= 2
    return FrontDiagram(tuple(events))


def random_single_component_front(
    rng: random.Random, max_events: int = 24, max_tries: int = 200
) -> FrontDiagram:
    """Rejection-sample random_closed_front down to one component."""
    for _ in range(max_tries):
        d = random_closed_front(rng, max_events)
        if trace_components(d).n_components == 1:
            return d
    raise RuntimeError("failed to generate a single-component front")
