"""
Classification oracles
======================

Tight unknots are classified by (tb, r) alone; the oracle checks the
admissible range and hands back the catalog representative.  In an
overtwisted structure xi_h on the 3-sphere the picture splits: loose
knots are classified coarsely by (tb, r), while exceptional unknots
exist only for Hopf invariant h = -1, realizing (1, 0) and (n, +-(n-1)).
"""

from legkit import (
    ContactStructureTag,
    OrientedFront,
    classify_loose,
    classify_tight_unknot,
    complement_torus_data,
    d3_from_hopf,
    exceptional_unknot_classes,
    hopf_after_lutz,
    hopf_after_lutz_front,
    loose_check,
    parse_front,
)

# Tight case: the Main Theorem as a decision procedure.
for a, b in [((-1, 0), (-1, 0)), ((-3, 0), (-3, 2)), ((-2, 0), (-1, 0))]:
    v = classify_tight_unknot(a, b)
    print(f"tight {a} vs {b}: {v.status}")

# Lutz twisting transverse links changes the Hopf invariant by
# sum(sl_i) + 2 sum(lk_ij); k Hopf fibers give k(k - 2).
for k in (1, 2, 3, 10):
    lk = [[1] * k for _ in range(k)]
    print(f"pi-Lutz along {k} Hopf fibers: h = {hopf_after_lutz([-1] * k, lk)}")

# The same formula evaluated on a front: each component contributes its
# positive transverse pushoff with sl = tb - r.
clasp = parse_front("L 1\nL 2\nX 1\nX 1\nR 2\nR 1")
print("clasped unknots, lk = 1: h =", hopf_after_lutz_front(OrientedFront.default(clasp)))

# d3 is exact rational arithmetic.
print("d3 of xi_-1:", d3_from_hopf(-1), "| d3 of the tight structure:", d3_from_hopf(0))

# Overtwisted oracles.
xi0 = ContactStructureTag.overtwisted(0)
print("tb = 0 trivial knot in xi_0:", loose_check(xi0, 0, True).status)
xi2 = ContactStructureTag.overtwisted(2)
print("loose (-4,1) vs (-4,1) in xi_2:", classify_loose(xi2, (-4, 1), (-4, 1)).status)
print("loose (-4,1) vs (-4,-1):", classify_loose(xi2, (-4, 1), (-4, -1)).status)

# Exceptional unknots live only in xi_-1.
print("exceptional classes in xi_0:", exceptional_unknot_classes(0).up_to(5))
print("exceptional classes in xi_-1:", exceptional_unknot_classes(-1).up_to(4))

# Complement-torus lattice data for a tb = n unknot: the meridian
# -n e_theta + e_x satisfies e_theta ^ mu = 1 and e_x ^ mu = n exactly.
data = complement_torus_data(2)
print(f"n = 2: meridian {data.meridian}, wedge checks {data.wedge_checks()}")
print("pushoff rule:", data.pushoff_rotation_rule)
