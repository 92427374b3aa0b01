"""Hermitian matrices over the quadratic order, cusp rules, enumeration.

Matrices are kept exact (entries are KNum).  Only sizes n <= 2 are
supported for enumeration and conjugation; that is where the desk-scale
expansions live.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import LatticeMismatch, SingularMatrix, UnsupportedSize
from .fields import FieldData, KNum

Matrix = tuple[tuple[KNum, ...], ...]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, r = len(a), len(b), len(b[0])
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(m)),
                           a[0][0]._like(0, 0)) for j in range(r))
                 for i in range(n))


def mat_conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i].conj() for j in range(len(a)))
                 for i in range(len(a[0])))


def mat_det(a: Matrix) -> KNum:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    raise UnsupportedSize(f"determinant for n = {n} not supported")


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    d = mat_det(a)
    if d.is_zero:
        raise SingularMatrix("matrix is singular")
    if n == 1:
        return ((d.inverse(),),)
    adj = ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))
    di = d.inverse()
    return tuple(tuple(x * di for x in row) for row in adj)


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def identity_matrix(field: FieldData, n: int) -> Matrix:
    return tuple(tuple(field.K(1 if i == j else 0) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A Hermitian matrix with exact entries and rational diagonal."""

    field: FieldData
    entries: Matrix

    def __post_init__(self):
        n = self.n
        for i in range(n):
            if not self.entries[i][i].is_rational:
                raise LatticeMismatch("diagonal entries must be rational")
            for j in range(n):
                e, f = self.entries[i][j], self.entries[j][i]
                if e.conj() != f:
                    raise LatticeMismatch("matrix is not Hermitian")

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_pairs(cls, field: FieldData, pairs) -> "HermitianMatrix":
        """Build from nested [u, v] coordinate pairs in the basis (1, w)."""
        rows = tuple(tuple(field.K(Fraction(u), Fraction(v)) for (u, v) in row)
                     for row in pairs)
        return cls(field, rows)

    def det(self) -> Fraction:
        d = mat_det(self.entries)
        assert d.is_rational
        return d.u

    def trace(self) -> Fraction:
        return sum(self.entries[i][i].u for i in range(self.n))

    def leading_minor(self, j: int) -> Fraction:
        sub = tuple(tuple(self.entries[a][b] for b in range(j))
                    for a in range(j))
        d = mat_det(sub)
        assert d.is_rational
        return d.u

    def is_integral(self) -> bool:
        return (all(e.is_integral() for row in self.entries for e in row)
                and all(self.entries[i][i].u.denominator == 1
                        for i in range(self.n)))

    def key(self) -> tuple:
        """Canonical hashable form: ((u, v) per entry, row-major)."""
        def pair(e: KNum):
            return (str(e.u) if e.u.denominator != 1 else int(e.u),
                    str(e.v) if e.v.denominator != 1 else int(e.v))
        return tuple(pair(e) for row in self.entries for e in row)

    def scaled(self, c) -> Matrix:
        return mat_scale(self.entries, c)

    def __eq__(self, o):
        if not isinstance(o, HermitianMatrix):
            return NotImplemented
        return self.entries == o.entries

    def __repr__(self):
        return f"Her({self.entries!r})"


def is_positive_definite(beta: HermitianMatrix) -> bool:
    """Sylvester criterion on the exact leading principal minors."""
    return all(beta.leading_minor(j) > 0 for j in range(1, beta.n + 1))


def enumerate_positive(field: FieldData, n: int, trace_bound: int) -> list[HermitianMatrix]:
    """All positive-definite lattice matrices with trace <= trace_bound.

    Ordered by (trace, canonical entry key).  Sizes n <= 2 only.
    """
    if n == 1:
        return [HermitianMatrix.from_pairs(field, [[(m, 0)]])
                for m in range(1, trace_bound + 1)]
    if n != 2:
        raise UnsupportedSize(f"enumeration for n = {n} not supported")
    s, t = field.omega_s, field.omega_t
    disc = s * s + 4 * t  # negative
    out = []
    for a in range(1, trace_bound):
        for c in range(1, trace_bound - a + 1):
            vmax = math.isqrt(4 * a * c // (-disc)) + 1
            umax = math.isqrt(a * c) + abs(s) * vmax + 1
            for v in range(-vmax, vmax + 1):
                for u in range(-umax, umax + 1):
                    b = field.K(u, v)
                    if b.norm() < a * c:
                        m = HermitianMatrix(field, (
                            (field.K(a), b),
                            (b.conj(), field.K(c))))
                        out.append(m)
    out.sort(key=lambda m: (m.trace(), m.key()))
    return out


def gl_conjugate(beta: HermitianMatrix, h: Matrix, lam) -> HermitianMatrix:
    """Index change under a Levi element: lam^-1 * conj(h)^-T * beta * h^-1."""
    hi = mat_inverse(h)
    hct = mat_conj_transpose(hi)
    m = mat_mul(mat_mul(hct, beta.entries), hi)
    m = mat_scale(m, Fraction(1, 1) / Fraction(lam))
    return HermitianMatrix(beta.field, m)


def gl_conjugate_inverse(beta: HermitianMatrix, h: Matrix, lam) -> HermitianMatrix:
    """Inverse of gl_conjugate with the same (h, lam)."""
    hct = mat_conj_transpose(h)
    m = mat_mul(mat_mul(hct, beta.entries), h)
    m = mat_scale(m, Fraction(lam))
    return HermitianMatrix(beta.field, m)


@dataclass(frozen=True)
class CuspData:
    """A cusp label together with its coefficient-sum rule.

    The rule maps a lattice matrix to a list of (a, multiplicity) pairs,
    where a is an exact field element that is a p-adic unit.
    """

    label: str
    n: int
    rule: Callable[[HermitianMatrix], list[tuple[KNum, int]]]

    @classmethod
    def single_term(cls, field: FieldData, n: int) -> "CuspData":
        one = field.K(1)

        def rule(beta: HermitianMatrix):
            return [(one, 1)]

        return cls("single", n, rule)

    @classmethod
    def divisor_rule(cls, field: FieldData) -> "CuspData":
        """Katz-style rank-one rule: positive divisors prime to p."""
        p = field.p

        def rule(beta: HermitianMatrix):
            m = int(beta.trace())
            return [(field.K(d), 1) for d in range(1, m + 1)
                    if m % d == 0 and d % p != 0]

        return cls("divisor", 1, rule)
