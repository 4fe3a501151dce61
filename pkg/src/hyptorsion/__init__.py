"""Exact division polynomials and torsion-point loci for odd-degree
hyperelliptic curves embedded in their Jacobians via a Weierstrass point.

The package computes, over the rationals and over finite fields:

* the division-polynomial sequence of a model y^2 + Q(x) y = P(x) and the
  matrix of its row expansions,
* the locus polynomial whose roots are the x-coordinates of affine points
  of order dividing N (2-torsion excluded), with degree and leading
  coefficient laws and locus-power divisibility checks,
* independent certification of every locus root through Mumford
  representation arithmetic in the Jacobian,
* emptiness certificates by reduction modulo witness primes and a
  resultant-based search for exceptional characteristics.

All arithmetic is exact: arbitrary-precision integers and rationals, prime
fields, and deterministic extension fields.  No floating point anywhere.
"""

from .curve import HyperellipticModel, MuNu, lift_to_integers, model_from_text, mu_nu, new_model, reduce_mod_p, two_torsion_x
from .divpoly import SSequence, build_M, cantor_P, delta, delta_degree, delta_leading_coeff, gamma, pi_subdet, s_sequence, subdet_indices
from .errors import BadModelError, HyptorsionError, InexactDivisionError, TheoremViolation, UsageError
from .exactnum import QQ, FieldElement, FieldSpec, frobenius, make_extension, prime_field, solve_quadratic
from .jacobian import MumfordDivisor, add, context_over, embed_point, has_exact_order, identity, neg, scalar_mul, verify_utilde
from .poly import Poly, ZZ, exact_div, hasse_derivative, poly_gcd, resultant, roots_by_degree, squarefree_part
from .search import characteristic_search, reduction_scan
from .torsion import bounds, count_tilde, divisibility_check, epsilon, rank_at, utilde

__version__ = "0.1.0"
