"""Coefficient rings: exact rationals, p-adic integers, cyclotomic rationals.

Mixing rings is an error, never a coercion; plain integers and Fractions
are accepted everywhere as scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RingMismatch
from .padic import PadicElt


def _cyclotomic_poly(m: int) -> list[int]:
    """Coefficients of the m-th cyclotomic polynomial (ascending)."""
    # divide x^m - 1 by the cyclotomic polynomials of the proper divisors
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q = _cyclotomic_poly(d)
            poly = _poly_div_exact(poly, q)
    return poly


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert all(c == 0 for c in num)
    return out


@dataclass(frozen=True, eq=False)
class CycloElt:
    """An element of the m-th cyclotomic field as a vector mod Phi_m."""

    m: int
    coeffs: tuple[Fraction, ...]  # length deg Phi_m

    @classmethod
    def scalar(cls, m: int, c) -> "CycloElt":
        deg = len(_phi(m)) - 1
        return cls(m, (Fraction(c),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def root_power(cls, m: int, e: int) -> "CycloElt":
        """zeta_m ** e."""
        deg = len(_phi(m)) - 1
        vec = [Fraction(0)] * m
        vec[e % m] = Fraction(1)
        return cls(m, tuple(_reduce(vec, m)[:deg]))

    def _check(self, o: "CycloElt"):
        if self.m != o.m:
            raise RingMismatch("cyclotomic orders differ")

    def __add__(self, o):
        o = _coerce(self.m, o)
        self._check(o)
        return CycloElt(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, o):
        return self + (-_coerce(self.m, o))

    def __neg__(self):
        return CycloElt(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return CycloElt(self.m, tuple(a * o for a in self.coeffs))
        self._check(o)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloElt(self.m, tuple(_reduce(prod, self.m)[:n]))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = CycloElt.scalar(self.m, o)
        if not isinstance(o, CycloElt):
            return NotImplemented
        return self.m == o.m and self.coeffs == o.coeffs


_PHI_CACHE: dict[int, list[int]] = {}


def _phi(m: int) -> list[int]:
    if m not in _PHI_CACHE:
        _PHI_CACHE[m] = _cyclotomic_poly(m)
    return _PHI_CACHE[m]


def _reduce(vec: list[Fraction], m: int) -> list[Fraction]:
    phi = _phi(m)
    deg = len(phi) - 1
    vec = list(vec) + [Fraction(0)] * deg
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = Fraction(0)
            for j in range(deg):
                vec[i - deg + j] -= c * phi[j]
    return vec[:deg] + [Fraction(0)] * max(0, deg - len(vec))


def _coerce(m: int, o):
    if isinstance(o, (int, Fraction)):
        return CycloElt.scalar(m, o)
    return o


# -- ring objects ------------------------------------------------------------


class RationalRing:
    tag = "qq"

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def scalar(self, c):
        return Fraction(c)

    def is_zero(self, x) -> bool:
        return x == 0

    def invert(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise RingMismatch(f"cannot place {type(x).__name__} in the rational ring")

    def eq(self, x, y) -> bool:
        return x == y


@dataclass(frozen=True)
class PadicRing:
    p: int
    prec: int
    tag = "zp"

    def one(self):
        return PadicElt.one(self.p, self.prec)

    def zero(self):
        return PadicElt.zero(self.p, self.prec)

    def scalar(self, c):
        return PadicElt.from_rational(Fraction(c), p=self.p, prec=self.prec)

    def is_zero(self, x) -> bool:
        return x.is_zero

    def invert(self, x):
        return x.invert()

    def coerce(self, x):
        if isinstance(x, PadicElt):
            if x.p != self.p:
                raise RingMismatch("wrong residue characteristic")
            return x
        if isinstance(x, (int, Fraction)):
            return self.scalar(x)
        raise RingMismatch(f"cannot place {type(x).__name__} in the p-adic ring")

    def eq(self, x, y) -> bool:
        return x == y


@dataclass(frozen=True)
class CyclotomicRing:
    m: int
    tag = "cyclo"

    def one(self):
        return CycloElt.scalar(self.m, 1)

    def zero(self):
        return CycloElt.scalar(self.m, 0)

    def scalar(self, c):
        return CycloElt.scalar(self.m, c)

    def root(self, e: int = 1):
        return CycloElt.root_power(self.m, e)

    def is_zero(self, x) -> bool:
        return x.is_zero

    def coerce(self, x):
        if isinstance(x, CycloElt):
            if x.m != self.m:
                raise RingMismatch("cyclotomic orders differ")
            return x
        if isinstance(x, (int, Fraction)):
            return self.scalar(x)
        raise RingMismatch(f"cannot place {type(x).__name__} in the cyclotomic ring")

    def eq(self, x, y) -> bool:
        return self.coerce(x) == self.coerce(y)


QQ = RationalRing()
