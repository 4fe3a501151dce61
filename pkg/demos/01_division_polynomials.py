"""Division polynomials of an odd-degree hyperelliptic model.

The sequence s_n attached to y^2 + Q(x) y = P(x) generalizes the division
polynomials of an elliptic curve: s_n vanishes at the x-coordinates that
matter for torsion at level n + g - 1 and friends.  The whole sequence is
produced by a single first-order recursion in ZZ[x]; each term has degree
2gn and a leading coefficient given in closed form.
"""

from hyptorsion import QQ, Poly, cantor_P, delta, delta_degree, delta_leading_coeff, new_model, s_sequence

# The genus-2 curve y^2 + y = x^5.
model = new_model(QQ, Poly.of_ints(QQ, [0, 0, 0, 0, 0, 1]), Poly.of_ints(QQ, [1]))
print("model:", model)

seq = s_sequence(model, 6)
for n in range(3, 7):
    print(f"s_{n} =", seq.s(n))

# The "level" objects: the leftmost stripped subdeterminant at level N.
# For N = 5 (mu = 0) it is simply s_3; its degree and leading coefficient
# follow the closed-form laws.
d5 = delta(model, 5)
print("\nlevel-5 subdeterminant:", d5)
print("degree:", d5.degree, "= predicted", delta_degree(2, 5))
print("leading coefficient:", d5.lc, "= predicted", delta_leading_coeff(2, 5))

# With the classical sign normalization (matching elliptic division
# polynomials at genus 1):
print("classically signed:", cantor_P(model, 5))

# Everything reduces coefficientwise into positive characteristic; at p = 2
# the level-5 subdeterminant collapses entirely:
print("\nlevel-5 subdeterminant mod 2:", delta(model, 5, 2))
print("level-7 subdeterminant mod 2:", delta(model, 7, 2))
