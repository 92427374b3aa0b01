"""CM field data, exact quadratic arithmetic, and p-adic embeddings.

The base field is the rationals throughout; the quadratic extension is one
of Q(i), Q(sqrt(-3)) or Q(sqrt(-7)), generated by an algebraic integer w
with w^2 = s*w + t.  In symplectic mode the extension collapses to the
rationals and conjugation is the identity.

A split odd prime p gives an isomorphism of the p-completed ring of
integers with Z_p x Z_p; the two projections are realised by the two
Hensel-lifted roots of x^2 - s*x - t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    DenominatorDivisibleByP,
    FieldDataError,
    NegativeValuationResult,
    NotAUnit,
)
from .padic import DEFAULT_PRECISION, PadicElt

# discriminant -> (s, t) with w^2 = s*w + t
_OMEGA_PARAMS = {-4: (0, -1), -3: (1, -1), -7: (1, -2)}


@dataclass(frozen=True)
class KNum:
    """Exact element u + v*w of the quadratic field (v = 0 on the rationals)."""

    u: Fraction
    v: Fraction
    s: int
    t: int

    @staticmethod
    def make(u, v=0, s=0, t=0) -> "KNum":
        return KNum(Fraction(u), Fraction(v), s, t)

    def _like(self, u, v) -> "KNum":
        return KNum(Fraction(u), Fraction(v), self.s, self.t)

    def __add__(self, o: "KNum") -> "KNum":
        return self._like(self.u + o.u, self.v + o.v)

    def __sub__(self, o: "KNum") -> "KNum":
        return self._like(self.u - o.u, self.v - o.v)

    def __neg__(self) -> "KNum":
        return self._like(-self.u, -self.v)

    def __mul__(self, o) -> "KNum":
        if isinstance(o, (int, Fraction)):
            return self._like(self.u * o, self.v * o)
        return self._like(self.u * o.u + self.t * self.v * o.v,
                          self.u * o.v + self.v * o.u + self.s * self.v * o.v)

    __rmul__ = __mul__

    def conj(self) -> "KNum":
        return self._like(self.u + self.s * self.v, -self.v)

    def norm(self) -> Fraction:
        n = self * self.conj()
        assert n.v == 0
        return n.u

    def trace(self) -> Fraction:
        return 2 * self.u + self.s * self.v

    def inverse(self) -> "KNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.conj() * Fraction(1, 1) * Fraction(n.denominator, n.numerator)

    def __truediv__(self, o) -> "KNum":
        if isinstance(o, (int, Fraction)):
            return self._like(self.u / o, self.v / o)
        return self * o.inverse()

    @property
    def is_rational(self) -> bool:
        return self.v == 0

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_integral(self) -> bool:
        return self.u.denominator == 1 and self.v.denominator == 1

    def __pow__(self, e: int) -> "KNum":
        if e < 0:
            return self.inverse() ** (-e)
        out = self._like(1, 0)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __repr__(self):
        return f"({self.u}+{self.v}w)"


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _hensel_root(s: int, t: int, p: int, prec: int) -> tuple[int, int]:
    """The two roots of x^2 - s*x - t mod p^prec, smaller residue mod p first."""
    roots = [r for r in range(p) if (r * r - s * r - t) % p == 0]
    if len(roots) != 2:
        raise FieldDataError(f"x^2-{s}x-{t} does not split mod {p}")
    r = min(roots)
    k = 1
    pk = p
    while k < prec:
        k = min(2 * k, prec)
        pk = p**k
        f = (r * r - s * r - t) % pk
        df = (2 * r - s) % pk
        r = (r - f * pow(df, -1, pk)) % pk
    return r, (s - r) % pk


@dataclass(frozen=True)
class FieldData:
    """Arithmetic context: prime, discriminant, precision and mode."""

    p: int
    k_disc: int = -4
    precision: int = DEFAULT_PRECISION
    mode: str = "unitary"
    e_degree: int = 1
    omega_s: int = dc_field(init=False, default=0)
    omega_t: int = dc_field(init=False, default=0)
    split_roots: tuple[int, int] = dc_field(init=False, default=(0, 0))

    def __post_init__(self):
        if self.mode not in ("unitary", "symplectic"):
            raise FieldDataError(f"unknown mode {self.mode!r}")
        if not _is_prime(self.p) or self.p == 2:
            raise FieldDataError(f"p = {self.p} is not an odd prime")
        if self.precision < 1:
            raise FieldDataError("precision must be >= 1")
        if self.mode == "symplectic":
            object.__setattr__(self, "k_disc", 1)
            return
        if self.k_disc not in _OMEGA_PARAMS:
            raise FieldDataError(f"unsupported discriminant {self.k_disc}")
        if self.k_disc % self.p == 0:
            raise FieldDataError(f"p = {self.p} ramifies")
        if pow(self.k_disc % self.p, (self.p - 1) // 2, self.p) != 1:
            raise FieldDataError(f"p = {self.p} is not split")
        s, t = _OMEGA_PARAMS[self.k_disc]
        object.__setattr__(self, "omega_s", s)
        object.__setattr__(self, "omega_t", t)
        object.__setattr__(self, "split_roots",
                           _hensel_root(s, t, self.p, self.precision))

    @classmethod
    def from_config(cls, source) -> "FieldData":
        """Build from a dict or a JSON config file path."""
        if isinstance(source, (str, bytes)):
            with open(source) as fh:
                source = json.load(fh)
        return cls(p=int(source["p"]),
                   k_disc=int(source.get("k_disc", -4)),
                   precision=int(source.get("precision", DEFAULT_PRECISION)),
                   mode=source.get("mode", "unitary"))

    # -- exact elements ----------------------------------------------------
    def K(self, u, v=0) -> KNum:
        if self.mode == "symplectic" and v != 0:
            raise FieldDataError("symplectic mode has no imaginary part")
        return KNum(Fraction(u), Fraction(v), self.omega_s, self.omega_t)

    def one(self) -> KNum:
        return self.K(1)

    @property
    def unit_group(self) -> tuple[KNum, ...]:
        """Integral units acting on cosets (totally positive in the split case)."""
        if self.mode == "symplectic":
            return (self.K(1),)
        if self.k_disc == -7:
            return (self.K(1), self.K(-1))
        if self.k_disc == -4:
            return (self.K(1), self.K(-1), self.K(0, 1), self.K(0, -1))
        # disc -3: sixth roots of unity
        return (self.K(1), self.K(-1), self.K(0, 1), self.K(0, -1),
                self.K(1, -1), self.K(-1, 1))

    # -- embeddings ----------------------------------------------------------
    def sigma_padic(self, a: KNum, prec: int | None = None) -> PadicElt:
        """First-root embedding of an exact element as a p-adic integer."""
        prec = prec or self.precision
        r = self.split_roots[0] if self.mode == "unitary" else 0
        num = a.u + a.v * r
        return PadicElt.from_rational(num, p=self.p, prec=prec)

    def sigma_bar_padic(self, a: KNum, prec: int | None = None) -> PadicElt:
        prec = prec or self.precision
        r = self.split_roots[1] if self.mode == "unitary" else 0
        return PadicElt.from_rational(a.u + a.v * r, p=self.p, prec=prec)

    def sigma_residue(self, a: KNum, j: int) -> int:
        """First-root embedding reduced mod p^j (p-integral input required)."""
        return self.sigma_padic(a, prec=max(j, 1)).lift(j)

    def sigma_bar_residue(self, a: KNum, j: int) -> int:
        return self.sigma_bar_padic(a, prec=max(j, 1)).lift(j)


@dataclass(frozen=True)
class Weight:
    """Scalar weight k with auxiliary twist exponent nu (one archimedean place)."""

    k: int
    nu: int = 0


@dataclass(frozen=True, eq=False)
class CMElt:
    """A completed-field element as its pair of split components."""

    field: FieldData
    xs: PadicElt  # first-root component
    xb: PadicElt  # second-root component

    @classmethod
    def embed(cls, a: KNum, field: FieldData, prec: int | None = None) -> "CMElt":
        """Split embedding of an exact p-integral element."""
        return cls(field, field.sigma_padic(a, prec), field.sigma_bar_padic(a, prec))

    @classmethod
    def from_pair(cls, a, b, field: FieldData, prec: int | None = None) -> "CMElt":
        """Embed the element a + b*w given by its integer-basis coordinates."""
        return cls.embed(field.K(a, b), field, prec)

    def __mul__(self, o: "CMElt") -> "CMElt":
        return CMElt(self.field, self.xs * o.xs, self.xb * o.xb)

    def __truediv__(self, o: "CMElt") -> "CMElt":
        return CMElt(self.field, self.xs / o.xs, self.xb / o.xb)

    def conj(self) -> "CMElt":
        if self.field.mode == "symplectic":
            return self
        return CMElt(self.field, self.xb, self.xs)

    def invert(self) -> "CMElt":
        return CMElt(self.field, self.xs.invert(), self.xb.invert())

    def __pow__(self, e: int) -> "CMElt":
        return CMElt(self.field, self.xs**e, self.xb**e)

    @property
    def is_unit(self) -> bool:
        return self.xs.is_unit and self.xb.is_unit

    def norm_relative(self) -> PadicElt:
        """Norm down to the completed base ring (identity in symplectic mode)."""
        if self.field.mode == "symplectic":
            return self.xs
        return self.xs * self.xb

    def __eq__(self, o) -> bool:
        if not isinstance(o, CMElt):
            return NotImplemented
        return self.xs == o.xs and self.xb == o.xb

    def __repr__(self):
        return f"CM({self.xs!r}, {self.xb!r})"


def cm_split_embed(a, b, field: FieldData, prec: int | None = None) -> CMElt:
    """Split embedding of a + b*w; rejects p-divisible denominators."""
    return CMElt.from_pair(a, b, field, prec)


def norm_weight(b: CMElt, w: Weight) -> PadicElt:
    """Weight norm: first component to the (k+2*nu) times the pair norm to the (-nu).

    On base-ring units this is the k-th power of the norm.  Non-unit input is
    accepted only when no negative power of a non-unit would be formed.
    """
    e1, e2 = w.k + w.nu, -w.nu
    num = b.xs ** max(e1, 0) * b.xb ** max(e2, 0)
    den = b.xs ** max(-e1, 0) * b.xb ** max(-e2, 0)
    return num / den


def norm_weight_exact(b: Fraction, w: Weight) -> Fraction:
    """Weight norm of an exact rational element: the plain k-th power."""
    if b == 0:
        raise NotAUnit("weight norm of zero")
    return Fraction(b) ** w.k
