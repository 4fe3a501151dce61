"""Certifying torsion loci with independent Jacobian arithmetic.

Mumford pairs (u, v) represent reduced divisor classes; composition and
reduction implement the group law in every characteristic.  None of this
code touches division polynomials, which is the point: every root of a
computed locus is re-proved torsion by actually multiplying the divisor.
"""

from hyptorsion import (
    QQ,
    FieldElement,
    Poly,
    context_over,
    embed_point,
    has_exact_order,
    neg,
    new_model,
    scalar_mul,
    verify_utilde,
)
from hyptorsion.jacobian import add

model = new_model(QQ, Poly.of_ints(QQ, [0, 0, 0, 0, 0, 1]), Poly.of_ints(QQ, [1]))
ctx = context_over(model)

# (0, 0) lies on y^2 + y = x^5; its class has exact order 5.
D = embed_point(ctx, FieldElement(QQ, 0), FieldElement(QQ, 0))
print("D = ", D)
print("5 D =", scalar_mul(D, 5), "   (identity: u = 1)")
print("2 D =", scalar_mul(D, 2))
print("exact order 5:", has_exact_order(D, 5))
print("D + (-D) is identity:", add(D, neg(D)).is_identity)

# Certify a whole locus at once.  Over GF(2) the order-5 locus is all of
# GF(16); all sixteen roots get certificates, with the y-coordinate living
# one quadratic step up when necessary.
report = verify_utilde(model, 5, 2)
print(f"\nGF(2) locus degree {report.locus_degree}, {len(report.certificates)} certificates:")
for cert in report.certificates[:5]:
    print("  x0 =", cert.x0, " (degree", cert.x0_field_degree, ") y0 =", cert.y0,
          " order | 5:", cert.order_divides_N)
print("  ...")

# Over the rationals, only rational roots can be lifted without number
# fields; the others are counted but left to the finite-field certificates.
report0 = verify_utilde(model, 5, 0)
print("\nQQ certificates:", [(c.x0, c.y0, c.order_divides_N) for c in report0.certificates])
print("roots out of rational reach:", report0.uncertified_roots)
