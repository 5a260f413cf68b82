"""
Front diagrams and the classical invariants
===========================================

A Legendrian front is encoded as a left-to-right event list acting on a
stack of strands: `L p` opens two strands (left cusp), `R p` caps two
(right cusp), `X p` crosses neighbours.  This script walks through the
basic unknot, its stabilizations, and linking numbers.
"""

from legkit import (
    OrientedFront,
    insert_zigzag,
    invariant_pair,
    linking_matrix,
    parse_front,
    serialize_front,
    trace_components,
    transverse_self_linking,
)

# The smallest closed front: one left cusp immediately capped.  Its lift is
# the standard Legendrian unknot with the maximal invariants (tb, r) = (-1, 0).
basic = parse_front("L 1\nR 1")
of = OrientedFront.default(basic)
print("basic front:", invariant_pair(of))

# Adding a crossing between the two strands costs one unit of tb.
eye_x = parse_front("L 1\nX 1\nR 1")
print("eye with crossing:", invariant_pair(OrientedFront.default(eye_x)))

# Stabilization: a two-cusp zig-zag always lowers tb by one and shifts r
# by +-1 depending on its orientation.
up = insert_zigzag(basic, 0, "up")
down = insert_zigzag(up, 0, "down")
print("after up zig-zag:  ", invariant_pair(OrientedFront.default(up)))
print("after up + down:   ", invariant_pair(OrientedFront.default(down)))
print("events:", serialize_front(down).replace("\n", " / "))

# The positive transverse pushoff has self-linking tb - r.
print("sl(T+):", transverse_self_linking(of, 0, "+"))

# Two clasped components: each crossing between distinct components
# contributes half its sign to the linking number.
clasp = parse_front("L 1\nL 2\nX 1\nX 1\nR 2\nR 1")
tr = trace_components(clasp)
print("clasp components:", tr.n_components)
print("linking matrix:", linking_matrix(OrientedFront.default(clasp)))
