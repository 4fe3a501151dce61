"""Torsion loci: which x-coordinates on the curve carry N-torsion.

For a point (x0, y0) on y^2 + Q y = P with F(x0) = Q(x0)^2 + 4 P(x0) != 0,
the class [(x0, y0)] - [infinity] has order dividing N exactly when a
certain matrix of division polynomials drops rank at x0.  The locus
polynomial collects those x0: the radical of the prime-to-F part of the
gcd of the matrix's maximal minors.
"""

from hyptorsion import (
    QQ,
    FieldElement,
    Poly,
    bounds,
    count_tilde,
    divisibility_check,
    new_model,
    rank_at,
    utilde,
)

model = new_model(QQ, Poly.of_ints(QQ, [0, 0, 0, 0, 0, 1]), Poly.of_ints(QQ, [1]))

# Characteristic zero: the order-5 locus is x (x^5 - 1); twelve affine
# points, since each root carries a pair swapped by the involution.
loc = utilde(model, 5)
print("order-5 locus / QQ:", loc.utilde, " -> ", count_tilde(model, 5), "points")

# Characteristic 2 is wilder: the leftmost subdeterminant vanishes
# identically and the locus jumps to all of GF(16).
loc2 = utilde(model, 5, 2)
print("order-5 locus / GF(2):", loc2.utilde, " -> ", count_tilde(model, 5, 2), "points")
print("leftmost subdeterminant vanished:", loc2.all_subdets_zero_before)

# That count meets the worst-case bound 8g^2 exactly:
print("bounds (g=2, N=5):", bounds(2, 5))

# Levels 3 <= N <= 2g are empty without any computation:
print("order-4 locus:", utilde(model, 4).utilde, "--", utilde(model, 4).note)

# Pointwise: the rank test at a single x0 (away from the 2-torsion locus).
for x0 in (1, 2):
    rep = rank_at(model, 5, FieldElement(QQ, x0))
    print(f"x0 = {x0}: rank {rep.rank}/{rep.max_rank},", "torsion" if rep.is_torsion_x else "not torsion")

# Locus powers divide the higher-level subdeterminants (exponents from a
# small symmetric table):
for r in (0, 1, 2):
    rep = divisibility_check(model, 5, r)
    print(f"locus^{rep.exponent} divides level-{5 + r} subdeterminant:", rep.passed)
