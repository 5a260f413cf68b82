"""Numeric realization of fronts and Legendrian lifting.

A front diagram is realized as a family of parametric arcs (x(t), z(t))
built from cubic Hermite pieces: event k sits at x = k + 1, a strand at
position p of n occupies the level (p - (n+1)/2) * spacing at the middle
of its slot.  Cusp ends use the semicubical local model (x ~ t^2,
z ~ t^3, so branches meet with a common horizontal tangent); crossing
ends meet at one point with slopes +-crossing_slope, giving a
transversality gap of twice that.

The Legendrian lift adds y = dz/dx.  For a closed component the lift must
satisfy dz = y dx, so the trapezoidal closure integral of y dx vanishes
up to quadrature error, and the winding number of the Lagrangian-projection
tangent recovers the combinatorial rotation number.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DegenerateTangent,
    GeometryDegenerate,
    NonGeneric,
    NotClosed,
)
from .fronts import (
    CROSS,
    LEFT,
    RIGHT,
    ComponentDecomposition,
    FrontDiagram,
    OrientedFront,
    trace_components,
)


@dataclass(frozen=True)
class GeomParams:
    spacing: float = 1.0  # vertical distance between adjacent strand levels
    crossing_slope: float = 0.5  # each branch leaves a crossing at +-this slope
    cusp_reach: float = 0.3  # fraction of the first piece taken by the cusp model
    # Sample density per arc.  The closure-integral bias of the trapezoid
    # rule scales as (pieces / samples)^2; this density keeps it below
    # 1e-9 of the curve diameter on every catalog front with several-fold
    # headroom.
    samples_per_arc: int = 100_000
    slope_margin: float = 0.1  # minimal slope gap at a crossing


@dataclass(frozen=True)
class CubicPiece:
    """x(t), z(t) cubics on t in [0, 1], stored as coefficient arrays (c0..c3)."""

    cx: tuple[float, float, float, float]
    cz: tuple[float, float, float, float]

    def eval(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        c = self.cx
        d = self.cz
        x = c[0] + t * (c[1] + t * (c[2] + t * c[3]))
        z = d[0] + t * (d[1] + t * (d[2] + t * d[3]))
        return x, z

    def deriv(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        c = self.cx
        d = self.cz
        dx = c[1] + t * (2 * c[2] + 3 * t * c[3])
        dz = d[1] + t * (2 * d[2] + 3 * t * d[3])
        return dx, dz


def _hermite(p0: float, v0: float, p1: float, v1: float) -> tuple[float, float, float, float]:
    # cubic with value/derivative prescribed at t = 0, 1
    c0 = p0
    c1 = v0
    c2 = 3 * (p1 - p0) - 2 * v0 - v1
    c3 = 2 * (p0 - p1) + v0 + v1
    return (c0, c1, c2, c3)


@dataclass(frozen=True)
class ArcCurve:
    arc: int
    pieces: tuple[CubicPiece, ...]

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays (x, z, y) at n points uniform in the arc parameter."""
        m = len(self.pieces)
        per = max(2, n // m)
        xs, zs, ys = [], [], []
        for k, piece in enumerate(self.pieces):
            t = np.linspace(0.0, 1.0, per, endpoint=(k == m - 1))
            x, z = piece.eval(t)
            dx, dz = piece.deriv(t)
            with np.errstate(divide="ignore", invalid="ignore"):
                y = np.where(np.abs(dx) > 1e-14, dz / np.where(dx == 0, 1, dx), 0.0)
            xs.append(x)
            zs.append(z)
            ys.append(y)
        return np.concatenate(xs), np.concatenate(zs), np.concatenate(ys)


@dataclass(frozen=True)
class RealizedFront:
    diagram: FrontDiagram
    params: GeomParams
    curves: tuple[ArcCurve, ...]  # indexed by arc
    crossing_gaps: tuple[float, ...]

    @property
    def trace(self) -> ComponentDecomposition:
        return trace_components(self.diagram)


def _levels(tr: ComponentDecomposition, spacing: float) -> dict[tuple[int, int], float]:
    """(slot, position) -> z level, centered per slot."""
    out = {}
    for j, stack in enumerate(tr.stacks):
        n = len(stack)
        for p in range(1, n + 1):
            out[(j, p)] = (p - (n + 1) / 2.0) * spacing
    return out


def realize_front(d: FrontDiagram, params: GeomParams = GeomParams()) -> RealizedFront:
    """Build a generic planar realization with semicubical cusps."""
    if params.crossing_slope * 2 < params.slope_margin:
        raise GeometryDegenerate(
            f"crossing slope gap {2 * params.crossing_slope} below margin {params.slope_margin}"
        )
    tr = trace_components(d)
    lv = _levels(tr, params.spacing)
    events = d.events

    def event_x(k: int) -> float:
        return float(k + 1)

    # endpoint geometry per arc: (x, z, kind, slope)
    def endpoint(arc_idx: int, end: str):
        a = tr.arcs[arc_idx]
        if end == "born":
            k = a.born
            ev = events[k]
            if ev.kind == LEFT:
                zl = lv[(k + 1, ev.position)]
                zu = lv[(k + 1, ev.position + 1)]
                return event_x(k), (zl + zu) / 2, "cusp", 0.0
            # crossing: out_lower continues in_upper (slope -m), out_upper in_lower (+m)
            z = (lv[(k + 1, ev.position)] + lv[(k + 1, ev.position + 1)]) / 2
            slope = params.crossing_slope if a.role == 1 else -params.crossing_slope
            return event_x(k), z, "cross", slope
        k = a.died
        ev = events[k]
        if ev.kind == RIGHT:
            zl = lv[(k, ev.position)]
            zu = lv[(k, ev.position + 1)]
            return event_x(k), (zl + zu) / 2, "cusp", 0.0
        z = (lv[(k, ev.position)] + lv[(k, ev.position + 1)]) / 2
        # in_lower leaves upward (+m), in_upper downward (-m)
        slope = params.crossing_slope if arc_idx == _in_lower(tr, k) else -params.crossing_slope
        return event_x(k), z, "cross", slope

    def _in_lower(trc, k):
        for x in trc.crossings:
            if x.event == k:
                return x.in_lower
        raise AssertionError

    curves = []
    for a in tr.arcs:
        x0, z0, kind0, s0 = endpoint(a.index, "born")
        x1, z1, kind1, s1 = endpoint(a.index, "died")
        anchors = []
        for j in range(a.born + 1, a.died + 1):
            p = tr.stacks[j].index(a.index) + 1
            anchors.append((j + 0.5, lv[(j, p)]))
        knots: list[tuple[float, float, Optional[float]]] = [(x0, z0, None)]
        knots += [(ax, az, None) for ax, az in anchors]
        knots.append((x1, z1, None))

        # expand cusp ends into a dedicated semicubical piece
        pieces: list[CubicPiece] = []
        pts = [(x, z) for x, z, _ in knots]
        # head cusp
        head_extra = None
        if kind0 == "cusp":
            nx, nz = pts[1]
            h = params.cusp_reach * (nx - x0)
            target = (nz - z0) / (nx - x0)
            kk = target * h / 3.0
            head_extra = (x0 + h, z0 + kk, 3 * kk / h if h else 0.0)
        tail_extra = None
        if kind1 == "cusp":
            px, pz = pts[-2]
            h = params.cusp_reach * (x1 - px)
            target = (z1 - pz) / (x1 - px)
            kk = target * h / 3.0
            tail_extra = (x1 - h, z1 - kk, 3 * kk / h if h else 0.0)

        inner: list[tuple[float, float, float]] = []
        if head_extra:
            inner.append(head_extra)
        for i in range(1, len(pts) - 1):
            ax, az = pts[i]
            x_prev = pts[i - 1][0]
            x_next = pts[i + 1][0]
            z_prev = pts[i - 1][1]
            z_next = pts[i + 1][1]
            slope = (z_next - z_prev) / (x_next - x_prev)
            inner.append((ax, az, slope))
        if tail_extra:
            inner.append(tail_extra)

        # assemble pieces: head, inner chain, tail
        def cusp_piece(xc, zc, xe, ze, we, reverse):
            h = abs(xe - xc)
            kk = (ze - zc) if not reverse else (zc - ze)
            # x(t) = xc +- h t^2 (2 - t); z(t) = zc + (ze - zc) t^3 (forward)
            if not reverse:
                cx = (xc, 0.0, 2 * h, -h) if xe > xc else (xc, 0.0, -2 * h, h)
                cz = (zc, 0.0, 0.0, ze - zc)
            else:
                # built backwards then reparameterized t -> 1 - t
                cx_f = (xe, 0.0, 2 * h, -h) if xc > xe else (xe, 0.0, -2 * h, h)
                cz_f = (ze, 0.0, 0.0, zc - ze)
                cx = _reverse_cubic(cx_f)
                cz = _reverse_cubic(cz_f)
            return CubicPiece(cx, cz)

        chain: list[tuple[float, float, float]] = []
        if kind0 == "cusp":
            xe, ze, we = head_extra
            pieces.append(cusp_piece(x0, z0, xe, ze, we, reverse=False))
            chain.append(head_extra)
        else:
            chain.append((x0, z0, s0))
        for i in range(1, len(pts) - 1):
            ax, az = pts[i]
            slope = inner[i - 1 + (1 if head_extra else 0)][2]
            chain.append((ax, az, slope))
        if kind1 == "cusp":
            chain.append(tail_extra)
        else:
            chain.append((x1, z1, s1))
        for (xa, za, sa), (xb, zb, sb) in zip(chain, chain[1:]):
            dx = xb - xa
            pieces.append(
                CubicPiece(_hermite(xa, dx, xb, dx), _hermite(za, sa * dx, zb, sb * dx))
            )
        if kind1 == "cusp":
            xe, ze, we = tail_extra
            pieces.append(cusp_piece(xe, ze, x1, z1, we, reverse=True))

        curves.append(ArcCurve(arc=a.index, pieces=tuple(pieces)))

    gaps = tuple(2 * params.crossing_slope for _ in tr.crossings)
    for g in gaps:
        if g < params.slope_margin:
            raise GeometryDegenerate("tangential crossing")
    return RealizedFront(diagram=d, params=params, curves=tuple(curves), crossing_gaps=gaps)


def _reverse_cubic(c: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
    """Coefficients of p(1 - t) given those of p(t)."""
    c0, c1, c2, c3 = c
    return (
        c0 + c1 + c2 + c3,
        -(c1 + 2 * c2 + 3 * c3),
        c2 + 3 * c3,
        -c3,
    )


# ---------------------------------------------------------------------------
# Lifting


@dataclass(frozen=True)
class LiftedCurve:
    """Closed polyline (x, y, z) with y the front slope; one component."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    closed: bool = True

    @staticmethod
    def from_samples(x, y, z, closed=True) -> "LiftedCurve":
        return LiftedCurve(np.asarray(x, float), np.asarray(y, float), np.asarray(z, float), closed)

    def diameter(self) -> float:
        return float(
            max(np.ptp(self.x), np.ptp(self.z), np.ptp(self.y), 1e-30)
        )

    def closure_integral(self) -> float:
        """Trapezoidal circulation of y dx around the curve."""
        x, y = self.x, self.y
        if self.closed:
            x = np.append(x, x[0])
            y = np.append(y, y[0])
        return float(np.sum((y[1:] + y[:-1]) / 2 * np.diff(x)))

    def legendrian_residual(self) -> float:
        """Max per-step violation of dz = y dx under the trapezoid rule."""
        x, y, z = self.x, self.y, self.z
        if self.closed:
            x = np.append(x, x[0])
            y = np.append(y, y[0])
            z = np.append(z, z[0])
        dz = np.diff(z)
        ydx = (y[1:] + y[:-1]) / 2 * np.diff(x)
        return float(np.max(np.abs(dz - ydx)))


def _traversal(tr: ComponentDecomposition, comp: int, dirs: dict[int, bool]) -> list[tuple[int, bool]]:
    """Ordered (arc, rightward) cycle of one component."""
    partner: dict[tuple[int, str], tuple[int, str]] = {}
    for c in tr.cusps:
        if c.kind == LEFT:
            partner[(c.lower, "born")] = (c.upper, "born")
            partner[(c.upper, "born")] = (c.lower, "born")
        else:
            partner[(c.lower, "died")] = (c.upper, "died")
            partner[(c.upper, "died")] = (c.lower, "died")
    for xch in tr.crossings:
        partner[(xch.in_lower, "died")] = (xch.out_upper, "born")
        partner[(xch.out_upper, "born")] = (xch.in_lower, "died")
        partner[(xch.in_upper, "died")] = (xch.out_lower, "born")
        partner[(xch.out_lower, "born")] = (xch.in_upper, "died")

    start = min(tr.arcs_of(comp))
    walk = []
    arc, rightward = start, dirs[start]
    while True:
        walk.append((arc, rightward))
        end = "died" if rightward else "born"
        nxt, nxt_end = partner[(arc, end)]
        rightward = nxt_end == "born"
        arc = nxt
        if arc == start and rightward == dirs[start]:
            break
    return walk


def legendrian_lift(
    rf: RealizedFront, comp: int = 0, of: Optional[OrientedFront] = None
) -> LiftedCurve:
    """Lift one component to a closed (x, y, z) polyline following its orientation."""
    for g in rf.crossing_gaps:
        if g < rf.params.slope_margin:
            raise NonGeneric("tangential crossing in realized front")
    tr = rf.trace
    if not 0 <= comp < tr.n_components:
        raise NotClosed(f"no component {comp}")
    if of is None:
        of = OrientedFront.default(rf.diagram)
    dirs = of.arc_directions()
    xs, ys, zs = [], [], []
    for arc, rightward in _traversal(tr, comp, dirs):
        x, z, y = rf.curves[arc].sample(rf.params.samples_per_arc)
        if not rightward:
            x, z, y = x[::-1], z[::-1], y[::-1]
        xs.append(x[:-1])
        ys.append(y[:-1])
        zs.append(z[:-1])
    return LiftedCurve(np.concatenate(xs), np.concatenate(ys), np.concatenate(zs))


def lagrangian_closure_integral(lc: LiftedCurve) -> float:
    """Algebraic area integral of the Lagrangian projection; 0 for genuine lifts."""
    return lc.closure_integral()


def numeric_rotation(lc: LiftedCurve) -> int:
    """Winding number of the Lagrangian-projection tangent, rounded to int."""
    res, winding = _winding(lc)
    return int(round(winding))


def rotation_residual(lc: LiftedCurve) -> float:
    """Distance of the raw winding number from the nearest integer."""
    _, winding = _winding(lc)
    return abs(winding - round(winding))


def _winding(lc: LiftedCurve) -> tuple[float, float]:
    # The page is oriented so that the combinatorial cusp-count convention
    # (kappa positive on rising cusps) and the tangent winding agree: the
    # Lagrangian plane is traversed with y measured downward.
    stride = max(1, len(lc.x) // 200_000)
    x, y = lc.x[::stride], -lc.y[::stride]
    if lc.closed:
        x = np.append(x, x[0])
        y = np.append(y, y[0])
    dx = np.diff(x)
    dy = np.diff(y)
    norms = np.hypot(dx, dy)
    keep = norms > 1e-13 * max(1.0, float(np.max(norms)))
    dx, dy = dx[keep], dy[keep]
    if len(dx) < 3:
        raise DegenerateTangent("not enough distinct samples for a winding number")
    ang = np.arctan2(dy, dx)
    turns = np.diff(np.concatenate([ang, ang[:1]]))
    turns = (turns + np.pi) % (2 * np.pi) - np.pi
    total = float(np.sum(turns)) / (2 * np.pi)
    return 0.0, total


@dataclass(frozen=True)
class DoublePointReport:
    point: tuple[float, float]
    area_one: float
    area_two: float
    flagged: bool


@dataclass(frozen=True)
class EmbeddednessReport:
    double_points: tuple[DoublePointReport, ...]
    tolerance: float

    @property
    def embedded(self) -> bool:
        return not any(p.flagged for p in self.double_points)


def lagrangian_embeddedness_check(
    lc: LiftedCurve, tolerance: float = 1e-6, max_segments: int = 2000
) -> EmbeddednessReport:
    """Split-area test: each Lagrangian double point must bound two loops of
    nonzero algebraic area."""
    step = max(1, len(lc.x) // max_segments)
    x = np.append(lc.x[::step], lc.x[0])
    y = np.append(lc.y[::step], lc.y[0])
    n = len(x) - 1
    p = np.stack([x[:-1], y[:-1]], axis=1)
    q = np.stack([x[1:], y[1:]], axis=1)
    reports = []
    for i in range(n):
        d1 = q[i] - p[i]
        js = np.arange(i + 2, n)
        if i == 0:
            js = js[js < n - 1]
        if len(js) == 0:
            continue
        d2 = q[js] - p[js]
        rel = p[js] - p[i]
        denom = d1[0] * d2[:, 1] - d1[1] * d2[:, 0]
        ok = np.abs(denom) > 1e-14
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (rel[:, 0] * d2[:, 1] - rel[:, 1] * d2[:, 0]) / denom
            u = (rel[:, 0] * d1[1] - rel[:, 1] * d1[0]) / -denom
        hit = ok & (t > 0) & (t < 1) & (u > 0) & (u < 1)
        for j, th in zip(js[hit], t[hit]):
            pt = p[i] + th * d1
            loop1 = np.vstack([[pt], p[i + 1 : j + 1], [pt]])
            loop2 = np.vstack([[pt], p[list(range(j + 1, n)) + list(range(0, i + 1))], [pt]])
            a1 = _shoelace(loop1)
            a2 = _shoelace(loop2)
            scale = max(np.ptp(lc.x) * np.ptp(lc.y), 1e-30)
            flagged = min(abs(a1), abs(a2)) < tolerance * scale
            reports.append(
                DoublePointReport(point=(float(pt[0]), float(pt[1])), area_one=a1,
                                  area_two=a2, flagged=flagged)
            )
    return EmbeddednessReport(double_points=tuple(reports), tolerance=tolerance)


def _shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return float(0.5 * np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def lift_csv(lc: LiftedCurve) -> str:
    """CSV dump of the sampled space curve, 17 significant digits."""
    lines = ["x,y,z"]
    for xi, yi, zi in zip(lc.x, lc.y, lc.z):
        lines.append(f"{xi:.17g},{yi:.17g},{zi:.17g}")
    return "\n".join(lines)
