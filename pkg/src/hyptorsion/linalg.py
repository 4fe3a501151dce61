"""Exact determinants and ranks for polynomial and scalar matrices.

Bareiss fraction-free elimination is the workhorse: intermediate entries are
minors of the input, so every division is exact (checked, not assumed).
Berkowitz's division-free algorithm covers matrices over quotient rings
k[x]/(h), where division is unavailable; it is only used to test whether a
candidate divisor h divides a determinant without expanding it.
"""

from __future__ import annotations

from .errors import UsageError
from .exactnum import FieldSpec
from .poly import Poly, exact_div

__all__ = ["bareiss_det", "berkowitz_det_mod", "scalar_rank"]


def bareiss_det(rows: list[list[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials over ZZ or a field."""
    n = len(rows)
    if n == 0:
        raise UsageError("empty matrix")
    dom = rows[0][0].dom
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k].is_zero:
            for r in range(k + 1, n):
                if not m[r][k].is_zero:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(dom)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pivot - mik * m[k][j]
                m[i][j] = exact_div(num, prev) if prev is not None else num
            m[i][k] = Poly.zero(dom)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


class _Quotient:
    """k[x]/(h) with h over a finite field; residues are reduced Polys."""

    def __init__(self, h: Poly):
        self.h = h
        self.dom = h.dom

    def red(self, f: Poly) -> Poly:
        return f % self.h

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.h

    def add(self, a: Poly, b: Poly) -> Poly:
        return a + b

    def neg(self, a: Poly) -> Poly:
        return -a

    @property
    def one(self) -> Poly:
        return Poly.one(self.dom)

    @property
    def zero(self) -> Poly:
        return Poly.zero(self.dom)


def berkowitz_det_mod(rows: list[list[Poly]], h: Poly) -> Poly:
    """det(rows) reduced mod h, computed division-free inside k[x]/(h).

    Because reduction mod h is a ring homomorphism this equals the full
    determinant reduced mod h; the point is never to expand the full
    determinant when only divisibility by h is asked.
    """
    ring = _Quotient(h)
    n = len(rows)
    a = [[ring.red(e) for e in row] for row in rows]
    vec = [ring.one]
    for i in range(n):
        diag = a[i][i]
        c = [ring.one, ring.neg(diag)]
        if i > 0:
            row_i = a[i][:i]
            w = [a[r][i] for r in range(i)]
            for _ in range(i):
                acc = ring.zero
                for t in range(i):
                    acc = ring.add(acc, ring.mul(row_i[t], w[t]))
                c.append(ring.neg(acc))
                w = [
                    _dot(ring, a[r][:i], w)
                    for r in range(i)
                ]
        new = []
        for r in range(i + 2):
            acc = ring.zero
            for k, vk in enumerate(vec):
                if 0 <= r - k < len(c):
                    acc = ring.add(acc, ring.mul(c[r - k], vk))
            new.append(acc)
        vec = new
    det = vec[n]
    if n % 2 == 1:
        det = ring.neg(det)
    return ring.red(det)


def _dot(ring, xs, ys):
    acc = ring.zero
    for x, y in zip(xs, ys):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def scalar_rank(rows: list[list], spec: FieldSpec) -> int:
    """Rank of a matrix of raw field values via Gaussian elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if not spec.is_zero(m[r][col]):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = spec.inv(m[rank][col])
        m[rank] = [spec.mul(v, inv) for v in m[rank]]
        for r in range(nrows):
            if r != rank and not spec.is_zero(m[r][col]):
                factor = m[r][col]
                m[r] = [spec.sub(v, spec.mul(factor, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank
