"""Exact scalar arithmetic: rationals, prime fields, extension fields.

Scalar values are plain Python data (``Fraction`` for the rationals, ``int``
residues for prime fields, coefficient tuples for extension fields) and a
``FieldSpec`` carries the operations.  This keeps inner loops over raw values
cheap; ``FieldElement`` wraps a (spec, value) pair with operators for API use.

Extension fields are constructed deterministically: the modulus is the first
monic irreducible polynomial of degree k over GF(p), scanning coefficient
tuples (c0, ..., c_{k-1}) in ascending base-p order with c0 varying fastest.
There is no lattice of compatible embeddings; each field stands alone, and
the one embedding helper needed (subfield into an extension of its degree
times d) lives in ``poly``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import UsageError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "QQ",
    "prime_field",
    "make_extension",
    "solve_quadratic",
    "frobenius",
    "sqrt_in_field",
    "is_prime",
]


# ---------------------------------------------------------------------------
# primality (deterministic Miller-Rabin, valid for all 64-bit inputs)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# minimal GF(p)[x] helpers used only to build extension moduli.
# (poly.Poly is built on top of this module, so these stay self-contained.)


def _pnorm(c: list[int], p: int) -> list[int]:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnorm(out, p)


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        q = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - q * mi) % p
        a = _pnorm(a, p)
    return a


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _pnorm(a, p), _pnorm(b, p)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Rabin test: monic m of degree k is irreducible over GF(p)."""
    k = len(m) - 1
    x = [0, 1]
    if _ppowmod(x, p**k, m, p) != x:
        return False
    kk = k
    primes = []
    d = 2
    while d * d <= kk:
        if kk % d == 0:
            primes.append(d)
            while kk % d == 0:
                kk //= d
        d += 1
    if kk > 1:
        primes.append(kk)
    for ell in primes:
        w = _ppowmod(x, p ** (k // ell), m, p)
        diff = _pnorm([(wi - xi) for wi, xi in zip(w + [0] * 2, x + [0] * len(w))], p)
        if len(_pgcd(diff, m, p)) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field specs


@dataclass(frozen=True)
class FieldSpec:
    """One of the three scalar domains: rationals, GF(p), GF(p^k).

    ``modulus`` is the full ascending coefficient tuple of the monic defining
    polynomial (length k+1, last entry 1) when kind == "ext", else None.
    """

    kind: str  # "rationals" | "prime" | "ext"
    p: int | None = None
    k: int = 1
    modulus: tuple[int, ...] | None = None

    # -- basic structure ----------------------------------------------------

    @property
    def char(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    @property
    def order(self) -> int | None:
        if self.kind == "rationals":
            return None
        return self.p**self.k

    @property
    def is_finite(self) -> bool:
        return self.kind != "rationals"

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        if self.kind == "prime":
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- constants ----------------------------------------------------------

    def zero(self):
        if self.kind == "rationals":
            return Fraction(0)
        if self.kind == "prime":
            return 0
        return (0,) * self.k

    def one(self):
        if self.kind == "rationals":
            return Fraction(1)
        if self.kind == "prime":
            return 1
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, n: int):
        if self.kind == "rationals":
            return Fraction(n)
        if self.kind == "prime":
            return n % self.p
        return (n % self.p,) + (0,) * (self.k - 1)

    def is_zero(self, v) -> bool:
        if self.kind == "ext":
            return all(c == 0 for c in v)
        return v == 0

    # -- arithmetic on raw values -------------------------------------------

    def add(self, a, b):
        if self.kind == "ext":
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == "ext":
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        if self.kind == "prime":
            return (a - b) % self.p
        return a - b

    def neg(self, a):
        if self.kind == "ext":
            p = self.p
            return tuple(-x % p for x in a)
        if self.kind == "prime":
            return -a % self.p
        return -a

    def mul(self, a, b):
        if self.kind == "prime":
            return a * b % self.p
        if self.kind == "rationals":
            return a * b
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        m = self.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * m[j]
        return tuple(c % p for c in prod[:k])

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rationals":
            return 1 / a
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        p = self.p
        r0, r1 = list(self.modulus), _pnorm(list(a), p)
        s0, s1 = [], [1]
        while len(r1) > 1:
            dm = len(r1) - 1
            invlc = pow(r1[-1], p - 2, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = list(r0)
            while len(r) - 1 >= dm and r:
                qc = r[-1] * invlc % p
                shift = len(r) - 1 - dm
                q[shift] = qc
                for i, mi in enumerate(r1):
                    r[shift + i] = (r[shift + i] - qc * mi) % p
                r = _pnorm(r, p)
            r0, r1 = r1, r
            qs1 = _pmul(q, s1, p)
            news = [
                ((s0[i] if i < len(s0) else 0) - (qs1[i] if i < len(qs1) else 0)) % p
                for i in range(max(len(s0), len(qs1), 1))
            ]
            s0, s1 = s1, _pnorm(news, p)
        c = pow(r1[0], p - 2, p)
        out = [x * c % p for x in s1]
        out += [0] * (self.k - len(out))
        return tuple(out[: self.k])

    def div(self, a, b):
        if self.kind == "rationals":
            return a / b
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    # -- enumeration, ordering, text form ------------------------------------

    def element_index(self, v) -> int:
        """Canonical position: residue for GF(p), sum c_i p^i for GF(p^k)."""
        if self.kind == "prime":
            return v
        if self.kind == "ext":
            n = 0
            for c in reversed(v):
                n = n * self.p + c
            return n
        raise UsageError("rationals are not enumerable")

    def element_from_index(self, n: int):
        if self.kind == "prime":
            return n % self.p
        if self.kind == "ext":
            out = []
            for _ in range(self.k):
                out.append(n % self.p)
                n //= self.p
            return tuple(out)
        raise UsageError("rationals are not enumerable")

    def elements(self):
        for n in range(self.order):
            yield self.element_from_index(n)

    def fmt(self, v) -> str:
        if self.kind == "rationals":
            return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
        if self.kind == "prime":
            return f"{v} mod {self.p}"
        return ",".join(str(c) for c in v)

    def parse(self, text: str):
        text = text.strip()
        if self.kind == "rationals":
            if "/" in text:
                n, d = text.split("/")
                return Fraction(int(n), int(d))
            return Fraction(int(text))
        if self.kind == "prime":
            if "mod" in text:
                r, m = text.split("mod")
                if int(m) != self.p:
                    raise UsageError(f"element is mod {m.strip()}, field is mod {self.p}")
                return int(r) % self.p
            return int(text) % self.p
        parts = [int(t) % self.p for t in text.split(",")]
        if len(parts) > self.k:
            raise UsageError(f"too many coefficients for GF({self.p}^{self.k})")
        parts += [0] * (self.k - len(parts))
        return tuple(parts)


QQ = FieldSpec("rationals")


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldSpec:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return FieldSpec("prime", p=p)


@lru_cache(maxsize=None)
def make_extension(p: int, k: int) -> FieldSpec:
    """GF(p^k) with the first monic irreducible modulus in canonical order.

    Candidate moduli x^k + c_{k-1}x^{k-1} + ... + c0 are scanned by ascending
    value of sum c_i p^i, so the result is identical across runs.  k == 1
    returns the prime field itself.
    """
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    if k < 1:
        raise UsageError("extension degree must be >= 1")
    if k == 1:
        return prime_field(p)
    for n in range(p**k):
        tail = []
        t = n
        for _ in range(k):
            tail.append(t % p)
            t //= p
        m = tail + [1]
        if _is_irreducible(m, p):
            return FieldSpec("ext", p=p, k=k, modulus=tuple(m))
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """A scalar tagged with its field; operators delegate to the spec."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value):
        if spec.kind == "rationals" and not isinstance(value, Fraction):
            value = Fraction(value)
        elif spec.kind == "prime" and isinstance(value, int):
            value = value % spec.p
        self.spec = spec
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise UsageError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.spec.from_int(other)
        raise TypeError(f"cannot combine FieldElement with {type(other)!r}")

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self._coerce(other), self.value))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return not self.spec.is_zero(self.value)

    def __repr__(self):
        return f"<{self.spec.fmt(self.value)} in {self.spec!r}>"

    def __str__(self):
        return self.spec.fmt(self.value)


def frobenius(e: FieldElement) -> FieldElement:
    """e -> e^p in a finite field; rejects rationals."""
    if not e.spec.is_finite:
        raise UsageError("Frobenius needs a finite field")
    return FieldElement(e.spec, e.spec.pow(e.value, e.spec.p))


# ---------------------------------------------------------------------------
# square roots and quadratics


def _sqrt_fraction(v: Fraction) -> Fraction | None:
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _legendre(spec: FieldSpec, v) -> int:
    """1, -1 or 0: quadratic character in odd characteristic."""
    if spec.is_zero(v):
        return 0
    w = spec.pow(v, (spec.order - 1) // 2)
    return 1 if w == spec.one() else -1


def _smallest_nonresidue(spec: FieldSpec):
    for v in spec.elements():
        if not spec.is_zero(v) and _legendre(spec, v) == -1:
            return v
    raise AssertionError("no quadratic non-residue found in a field of odd order")


def sqrt_in_field(spec: FieldSpec, v):
    """A square root of v, or None.

    Odd characteristic uses Tonelli-Shanks seeded with the canonically
    smallest non-residue, so the output is deterministic; characteristic 2
    inverts the Frobenius.  Rationals test numerator and denominator for
    perfect squares.  Of the two roots +/-r, the one with the smaller
    canonical index is returned.
    """
    if spec.kind == "rationals":
        return _sqrt_fraction(v)
    if spec.p == 2:
        return spec.pow(v, spec.order // 2)  # x -> x^(2^(K-1)) inverts squaring
    if spec.is_zero(v):
        return spec.zero()
    if _legendre(spec, v) != 1:
        return None
    q = spec.order
    t, s = q - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = spec.pow(_smallest_nonresidue(spec), t)
    x = spec.pow(v, (t + 1) // 2)
    b = spec.pow(v, t)
    while b != spec.one():
        m, bb = 0, b
        while bb != spec.one():
            bb = spec.mul(bb, bb)
            m += 1
        for _ in range(s - m - 1):
            z = spec.mul(z, z)
        x = spec.mul(x, z)
        z = spec.mul(z, z)
        b = spec.mul(b, z)
        s = m
    other = spec.neg(x)
    if spec.element_index(other) < spec.element_index(x):
        x = other
    return x


def _trace(spec: FieldSpec, v):
    """Absolute trace to GF(2) of v in GF(2^K)."""
    t = v
    acc = v
    for _ in range(spec.k - 1):
        t = spec.mul(t, t)
        acc = spec.add(acc, t)
    return acc


def _artin_schreier_root(spec: FieldSpec, d):
    """u with u^2 + u = d over GF(2^K), or None if the trace of d is 1."""
    if spec.is_zero(_trace(spec, d)):
        theta = None
        for cand in spec.elements():
            if _trace(spec, cand) == spec.one():
                theta = cand
                break
        # K odd would allow the half-trace shortcut; this form works for all K
        powers_d = [d]
        for _ in range(spec.k - 1):
            powers_d.append(spec.mul(powers_d[-1], powers_d[-1]))
        u = spec.zero()
        theta_pow = theta
        for i in range(spec.k - 1):
            s_i = spec.zero()
            for j in range(i + 1, spec.k):
                s_i = spec.add(s_i, powers_d[j])
            u = spec.add(u, spec.mul(s_i, theta_pow))
            theta_pow = spec.mul(theta_pow, theta_pow)
        return u
    return None


def solve_quadratic(a: FieldElement, b: FieldElement, c: FieldElement) -> list[FieldElement]:
    """All roots of a t^2 + b t + c in the coefficients' field, sorted.

    Characteristic 2 with b != 0 goes through the Artin-Schreier trace test;
    b == 0 there is a perfect square.  Odd characteristic and the rationals
    go through the discriminant.  The returned list has 0, 1 or 2 distinct
    roots (a double root appears once).
    """
    spec = a.spec
    if spec != b.spec or spec != c.spec:
        raise UsageError("coefficients must share one field")
    if not a:
        raise UsageError("degenerate quadratic: a = 0")
    av, bv, cv = a.value, b.value, c.value
    if spec.is_finite and spec.p == 2:
        if spec.is_zero(bv):
            r = sqrt_in_field(spec, spec.div(cv, av))  # t^2 = c/a, unique root
            return [FieldElement(spec, r)]
        scale = spec.div(bv, av)  # t = scale * u turns it into u^2 + u = d
        d = spec.div(spec.mul(av, cv), spec.mul(bv, bv))
        u = _artin_schreier_root(spec, d)
        if u is None:
            return []
        r1 = spec.mul(scale, u)
        r2 = spec.add(r1, scale)
        roots = [FieldElement(spec, r1), FieldElement(spec, r2)]
    else:
        disc = spec.sub(spec.mul(bv, bv), spec.mul(spec.from_int(4), spec.mul(av, cv)))
        if spec.kind == "rationals":
            s = _sqrt_fraction(disc)
        else:
            s = sqrt_in_field(spec, disc)
        if s is None:
            return []
        inv2a = spec.inv(spec.mul(spec.from_int(2), av))
        r1 = spec.mul(spec.sub(s, bv), inv2a)
        r2 = spec.mul(spec.sub(spec.neg(s), bv), inv2a)
        roots = [FieldElement(spec, r1)]
        if r2 != r1:
            roots.append(FieldElement(spec, r2))
    if spec.is_finite:
        roots.sort(key=lambda e: spec.element_index(e.value))
    else:
        roots.sort(key=lambda e: e.value)
    return roots
