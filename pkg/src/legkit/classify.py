"""Classification oracles for topologically trivial Legendrian knots.

Tight ambient structures: two unknots are Legendrian isotopic exactly when
their (tb, r) pairs agree and lie in the admissible range
D = {(-|m| - 2k - 1, m) : k >= 0}; the canonical representative is the
catalog front.

Overtwisted structures xi_h on S^3 are indexed by the Hopf invariant h
(d3 = -h - 1/2).  Loose knots are classified coarsely by (tb, r);
exceptional unknots exist only for h = -1, with classes (1, 0) and
(n, +-(n-1)).  A simultaneous pi-Lutz twist along a transverse link
changes the Hopf invariant to sum(sl_i) + 2 * sum_{i<j} lk_ij, and the
positive transverse pushoff of a Legendrian knot has sl = tb - r.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, NotOvertwisted, ZeroSlope
from .fronts import (
    OrientedFront,
    in_unknot_range,
    invariant_pair,
    linking_matrix,
    serialize_front,
)
from .trees import catalog_front

TIGHT = "tight-standard"
OVERTWISTED = "overtwisted"


@dataclass(frozen=True)
class ContactStructureTag:
    """Ambient contact structure: the standard tight one, or xi_h on S^3."""

    ambient: str  # TIGHT or OVERTWISTED
    hopf: Optional[int] = None  # Hopf invariant for overtwisted structures
    at_infinity: bool = False  # R^3 overtwisted at infinity

    @staticmethod
    def tight() -> "ContactStructureTag":
        return ContactStructureTag(TIGHT, hopf=0)

    @staticmethod
    def overtwisted(h: int, at_infinity: bool = False) -> "ContactStructureTag":
        return ContactStructureTag(OVERTWISTED, hopf=h, at_infinity=at_infinity)

    @property
    def is_overtwisted(self) -> bool:
        return self.ambient == OVERTWISTED


@dataclass(frozen=True)
class ClassificationVerdict:
    status: str
    inputs: tuple
    representative: Optional[str] = None  # catalog front text
    citation: str = ""
    detail: str = ""

    def to_json(self) -> str:
        payload = {
            "status": self.status,
            "inputs": list(self.inputs),
            "representative": self.representative,
            "citation": self.citation,
            "detail": self.detail,
        }
        return json.dumps(payload, sort_keys=True)


CITE_MAIN = "tight unknots are Legendrian isotopic iff (tb, r) agree"
CITE_RANGE = "admissible unknot range D = {(m, -|m|-2k-1)}"
CITE_LOOSE = "topologically trivial knots with tb <= 0 are loose"
CITE_COARSE = "loose unknots are coarsely classified by (tb, r)"
CITE_COARSE_ISO = "equal invariants and tb < 0 imply Legendrian isotopy"
CITE_DYMARA = "coarse = Legendrian classification in R^3 overtwisted at infinity"
CITE_EXCEPT = "exceptional unknots exist only in xi_-1: (1,0) and (n, +-(n-1))"
CITE_LUTZ = "pi-Lutz twists: h = sum(sl_i) + 2 sum lk_ij"
CITE_D3 = "d3 = -h - 1/2"
CITE_COMPLEMENT = "complement torus: meridian -n e_theta + e_x, slope n"


def classify_tight_unknot(
    a: tuple[int, int], b: tuple[int, int]
) -> ClassificationVerdict:
    """Decide Legendrian isotopy of tight unknots from their invariant pairs."""
    for pair in (a, b):
        if not in_unknot_range(*pair):
            return ClassificationVerdict(
                status="invalid-invariants",
                inputs=(a, b),
                citation=CITE_RANGE,
                detail=f"{pair} is not realized by a tight unknot",
            )
    if a == b:
        rep = serialize_front(catalog_front(*a))
        return ClassificationVerdict(
            status="isotopic", inputs=(a, b), representative=rep, citation=CITE_MAIN
        )
    return ClassificationVerdict(status="not-isotopic", inputs=(a, b), citation=CITE_MAIN)


def loose_check(
    tag: ContactStructureTag, tb: int, topologically_trivial: bool
) -> ClassificationVerdict:
    """One-directional looseness test: trivial knots with tb <= 0 are loose."""
    if not tag.is_overtwisted:
        raise NotOvertwisted("looseness is only defined in overtwisted structures")
    if topologically_trivial and tb <= 0:
        return ClassificationVerdict(
            status="loose-class", inputs=(tag.hopf, tb), citation=CITE_LOOSE
        )
    return ClassificationVerdict(
        status="undetermined-by-this-test",
        inputs=(tag.hopf, tb),
        citation=CITE_LOOSE,
        detail="tb > 0 or nontrivial knots may still be loose; the test is one-directional",
    )


def classify_loose(
    tag: ContactStructureTag, a: tuple[int, int], b: tuple[int, int]
) -> ClassificationVerdict:
    """Coarse classification of loose unknots, upgraded to isotopy when possible."""
    if not tag.is_overtwisted:
        raise NotOvertwisted("classify_loose needs an overtwisted ambient structure")
    if a != b:
        return ClassificationVerdict(
            status="not-coarsely-equivalent", inputs=(a, b), citation=CITE_COARSE
        )
    if a[0] < 0:
        return ClassificationVerdict(
            status="coarsely-equivalent-and-isotopic",
            inputs=(a, b),
            citation=CITE_COARSE_ISO,
        )
    if tag.at_infinity:
        return ClassificationVerdict(
            status="coarsely-equivalent-and-isotopic",
            inputs=(a, b),
            citation=CITE_DYMARA,
        )
    return ClassificationVerdict(
        status="coarsely-equivalent", inputs=(a, b), citation=CITE_COARSE
    )


class ExceptionalClasses:
    """Coarse classes of exceptional unknots in xi_h, lazily enumerable."""

    def __init__(self, hopf: int):
        self.hopf = hopf

    def __contains__(self, pair: tuple[int, int]) -> bool:
        tb, r = pair
        if self.hopf != -1:
            return False
        return tb >= 1 and abs(r) == tb - 1

    def up_to(self, n_max: int) -> list[tuple[int, int]]:
        if self.hopf != -1:
            return []
        out = [(1, 0)]
        for n in range(2, n_max + 1):
            out += [(n, n - 1), (n, -(n - 1))]
        return out

    def is_empty(self) -> bool:
        return self.hopf != -1


def exceptional_unknot_classes(hopf: int) -> ExceptionalClasses:
    """Complete list of exceptional unknot classes in (S^3, xi_h)."""
    return ExceptionalClasses(hopf)


def hopf_after_lutz(sl: Sequence[int], lk) -> int:
    """Hopf invariant after simultaneous pi-Lutz twists along a transverse link.

    ``lk`` is a symmetric k x k matrix (nested sequences, diagonal ignored);
    for k = 1 it may be None or [].
    """
    k = len(sl)
    if k < 1:
        raise DimensionMismatch("need at least one component")
    total = sum(sl)
    if k == 1:
        return total
    if lk is None or len(lk) != k or any(len(row) != k for row in lk):
        raise DimensionMismatch(f"lk must be a {k}x{k} symmetric matrix")
    for i in range(k):
        for j in range(i + 1, k):
            if lk[i][j] != lk[j][i]:
                raise DimensionMismatch("lk must be symmetric")
            total += 2 * lk[i][j]
    return total


def hopf_after_lutz_front(of: OrientedFront) -> int:
    """Hopf invariant of the Lutz twist along the positive transverse pushoff.

    Each component contributes sl_i = tb_i - r_i; pairs contribute twice
    their linking number.
    """
    k = of.trace.n_components
    sl = [invariant_pair(of, c) for c in range(k)]
    total = sum(tb - r for tb, r in sl)
    if k > 1:
        lk = linking_matrix(of)
        for i in range(k):
            for j in range(i + 1, k):
                total += 2 * lk[i][j]
    return total


def d3_from_hopf(h: int) -> Fraction:
    """Gompf d3 invariant of xi_h: exactly -h - 1/2."""
    return -Fraction(h) - Fraction(1, 2)


def hopf_from_d3(d3: Fraction) -> int:
    h = -d3 - Fraction(1, 2)
    if h.denominator != 1:
        raise ValueError(f"{d3} is not the d3 invariant of any plane field on S^3")
    return int(h)


@dataclass(frozen=True)
class ComplementTorusData:
    """Lattice data of the complementary solid torus for tb = n."""

    n: int
    meridian: tuple[int, int]  # in the (e_theta, e_x) basis
    singularity_slope: int
    pushoff_rotation_rule: str

    def wedge_checks(self) -> tuple[int, int]:
        """(e_theta ^ mu, e_x ^ mu) by exact 2x2 determinants."""
        e_theta, e_x = (1, 0), (0, 1)

        def wedge(u, v):
            return u[0] * v[1] - u[1] * v[0]

        return wedge(e_theta, self.meridian), wedge(e_x, self.meridian)


def complement_torus_data(n: int) -> ComplementTorusData:
    """Meridian and singularity-curve slope of the complement of a tb = n unknot."""
    if n == 0:
        raise ZeroSlope("complement torus data is undefined for slope 0")
    data = ComplementTorusData(
        n=n,
        meridian=(-n, 1),
        singularity_slope=n,
        pushoff_rotation_rule="ruling-curve rotation number equals -r(L)",
    )
    w_theta, w_x = data.wedge_checks()
    assert w_theta == 1 and w_x == n, CITE_COMPLEMENT
    return data
