"""Hunting the characteristics where a torsion locus jumps.

Generically the locus at level N is the reduction of its characteristic-zero
part; only finitely many primes break that.  Those primes divide the gcd of
pairwise resultants of the (suitably stripped) subdeterminants, so they can
be found exactly: factor the gcd, then confirm each candidate by recomputing
the locus mod p and re-proving the new points in the Jacobian.
"""

from hyptorsion import QQ, Poly, characteristic_search, new_model, verify_utilde

# Level 7 on y^2 + y = x^5: the curve has no 7-torsion on it in
# characteristic zero, and in exactly one positive characteristic it does.
model = new_model(QQ, Poly.of_ints(QQ, [0, 0, 0, 0, 0, 1]), Poly.of_ints(QQ, [1]))
rep = characteristic_search(model, 7)
print("generic locus:", rep.generic_factor)
print("candidate primes (divisors of the resultant gcd):", rep.candidate_primes)
for p, locus in rep.exceptional_primes:
    print(f"exceptional characteristic {p}: locus {locus}")
    verify_utilde(model, 7, p)  # raises if any root failed its order check
    print(f"  all roots certified by Jacobian arithmetic over GF({p}^k)")

# The genus-3 curve y^2 + y = x^7 keeps the two points over x = 0 at every
# good characteristic -- and picks up fourteen extra order-7 points at
# p = 13, where 13 = -1 mod 7 forces #X(GF(13)) = 14.
model7 = new_model(QQ, Poly.of_ints(QQ, [0] * 7 + [1]), Poly.of_ints(QQ, [1]))
rep7 = characteristic_search(model7, 7)
print("\ny^2 + y = x^7, level 7:")
print("generic locus:", rep7.generic_factor)
for p, locus in rep7.exceptional_primes:
    print(f"exceptional characteristic {p}: locus {locus}")
    verify_utilde(model7, 7, p)
    print(f"  certified over GF({p}) and GF({p}^2)")
