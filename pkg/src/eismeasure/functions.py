"""Functions on the pair domain (unit group) x (n-by-n matrix space).

The two coordinates of a point are a completed-field unit x and a matrix y
over the completed base ring.  Functions come in several flavours:

* ``LCFunction``    -- locally constant at a finite level, backed by a
                       sparse coset table or a coset rule;
* ``MonomialFunction`` -- an exact monomial in the split components of x
                       and det(y), evaluable over the rationals;
* ``ProductFunction``, ``LinearCombination``, ``ContinuousFunction`` --
                       the obvious combinators.

The bridge between the integrand side (unit-invariant H) and the
coefficient side (equivariant F) is the pair ``h_to_f`` / ``f_to_h``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .errors import (
    EquivarianceViolation,
    GroupOrderNotInvertible,
    LevelMismatch,
    NotAUnit,
    RingMismatch,
    SupportNotInvertible,
    UnsupportedSize,
)
from .fields import CMElt, FieldData, KNum, Weight, norm_weight
from .hermitian import Matrix, mat_det
from .padic import PadicElt
from .rings import QQ, CyclotomicRing, PadicRing

XKey = tuple[int, int]
YKey = tuple[int, ...]


def _vp_fraction(x: Fraction, p: int) -> int:
    if x == 0:
        raise ZeroDivisionError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def norm_rel_exact(a: KNum, field: FieldData) -> Fraction:
    """Exact relative norm (identity map in symplectic mode)."""
    if field.mode == "symplectic":
        return a.u
    return a.norm()


# -- coset arithmetic helpers -------------------------------------------------


def y_det_key(yk: YKey, n: int, pj: int) -> int:
    if n == 1:
        return yk[0] % pj
    if n == 2:
        return (yk[0] * yk[3] - yk[1] * yk[2]) % pj
    raise UnsupportedSize("coset determinant needs n <= 2")


def y_inverse_key(yk: YKey, n: int, p: int, pj: int) -> YKey:
    d = y_det_key(yk, n, pj)
    if d % p == 0:
        raise SupportNotInvertible("matrix coset is not invertible")
    di = pow(d, -1, pj)
    if n == 1:
        return (di,)
    return ((yk[3] * di) % pj, (-yk[1] * di) % pj,
            (-yk[2] * di) % pj, (yk[0] * di) % pj)


def x_norm_key(xk: XKey, field: FieldData, pj: int) -> int:
    if field.mode == "symplectic":
        return xk[0] % pj
    return xk[0] * xk[1] % pj


# -- points -------------------------------------------------------------------


@dataclass(frozen=True)
class GnPoint:
    """A point of the pair domain, exact and/or p-adic."""

    field: FieldData
    n: int
    x: KNum | None = None
    y: Matrix | None = None
    x_padic: CMElt | None = None
    y_padic: tuple[tuple[PadicElt, ...], ...] | None = None

    @classmethod
    def from_exact(cls, field: FieldData, x: KNum, y: Matrix) -> "GnPoint":
        return cls(field, len(y), x=x, y=y)

    @classmethod
    def from_padic(cls, field: FieldData, x: CMElt, y) -> "GnPoint":
        return cls(field, len(y), x_padic=x, y_padic=tuple(tuple(r) for r in y))

    # -- x accessors -------------------------------------------------------
    def x_cm(self, prec: int | None = None) -> CMElt:
        if self.x_padic is not None:
            return self.x_padic
        return CMElt.embed(self.x, self.field, prec)

    def x_key(self, j: int) -> XKey:
        if self.x_padic is not None:
            return (self.x_padic.xs.lift(j), self.x_padic.xb.lift(j))
        return (self.field.sigma_residue(self.x, j),
                self.field.sigma_bar_residue(self.x, j))

    # -- y accessors -------------------------------------------------------
    def y_key(self, j: int) -> YKey:
        if self.y_padic is not None:
            return tuple(e.lift(j) for row in self.y_padic for e in row)
        return tuple(self.field.sigma_residue(e, j)
                     for row in self.y for e in row)

    def det_y_padic(self, prec: int | None = None) -> PadicElt:
        if self.y_padic is not None:
            if self.n == 1:
                return self.y_padic[0][0]
            if self.n == 2:
                m = self.y_padic
                return m[0][0] * m[1][1] - m[0][1] * m[1][0]
            raise UnsupportedSize("n <= 2 only")
        return self.field.sigma_padic(mat_det(self.y), prec)

    def det_y_exact(self) -> KNum:
        if self.y is None:
            raise RingMismatch("point has no exact part")
        return mat_det(self.y)

    def unit_translate(self, e: KNum) -> "GnPoint":
        """The translated point (e*x, relative-norm(e)^-1 * y)."""
        ne = norm_rel_exact(e, self.field)
        if self.x is not None:
            y2 = tuple(tuple(v / ne for v in row) for row in self.y)
            return GnPoint(self.field, self.n, x=self.x * e, y=y2)
        ec = CMElt.embed(e, self.field)
        ni = PadicElt.from_rational(1 / ne, p=self.field.p,
                                    prec=self.field.precision)
        y2 = tuple(tuple(v * ni for v in row) for row in self.y_padic)
        return GnPoint(self.field, self.n, x_padic=self.x_cm() * ec, y_padic=y2)

    def x_is_unit(self) -> bool:
        xk = self.x_key(1)
        return xk[0] % self.field.p != 0 and xk[1] % self.field.p != 0

    def y_is_invertible(self) -> bool:
        return y_det_key(self.y_key(1), self.n, self.field.p) % self.field.p != 0


# -- function classes ---------------------------------------------------------


class GnFunction:
    """Base class; subclasses implement evaluate(pt, j)."""

    field: FieldData
    n: int
    ring: object
    y_invertible: bool = False

    def evaluate(self, pt: GnPoint, j: int | None = None):
        raise NotImplementedError

    def __add__(self, other: "GnFunction") -> "LinearCombination":
        return LinearCombination(self.field, self.n, self.ring,
                                 ((1, self), (1, other)))

    def scaled(self, c) -> "LinearCombination":
        return LinearCombination(self.field, self.n, self.ring, ((c, self),))


@dataclass(frozen=True, eq=False)
class LCFunction(GnFunction):
    """Locally constant function at a finite level.

    ``values`` is a sparse table keyed by (x-coset, y-coset); missing keys
    mean zero.  Alternatively ``rule`` computes the value from the cosets.
    """

    field: FieldData
    n: int
    ring: object
    level: int
    values: dict | None = None
    rule: Callable[[XKey, YKey], object] | None = None
    y_invertible: bool = False

    def __post_init__(self):
        if (self.values is None) == (self.rule is None):
            raise ValueError("exactly one of values/rule required")
        if self.level < 1:
            raise LevelMismatch("level must be >= 1")

    def evaluate(self, pt: GnPoint, j: int | None = None):
        if not pt.x_is_unit():
            raise NotAUnit("x coordinate must be a unit")
        if self.y_invertible and not pt.y_is_invertible():
            return self.ring.zero()
        key = (pt.x_key(self.level), pt.y_key(self.level))
        if self.values is not None:
            return self.values.get(key, self.ring.zero())
        return self.rule(*key)

    def to_table(self) -> "LCFunction":
        if self.values is not None:
            return self
        raise RingMismatch("rule-backed functions have no finite table")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        if self.values is None:
            raise RingMismatch("only table-backed functions serialize")
        entries = []
        for (xk, yk), v in sorted(self.values.items()):
            entries.append({"x_coset": list(xk), "y_coset": list(yk),
                            "value": _value_to_json(v)})
        return {"level": self.level, "n": self.n,
                "support": "y_invertible" if self.y_invertible else "all",
                "ring": self.ring.tag, "entries": entries}

    @classmethod
    def from_json(cls, data: dict, field: FieldData) -> "LCFunction":
        level = int(data["level"])
        ring = _ring_from_tag(data["ring"], field, level)
        values = {}
        for ent in data["entries"]:
            key = (tuple(ent["x_coset"]), tuple(ent["y_coset"]))
            values[key] = _value_from_json(ent["value"], ring)
        return cls(field, int(data["n"]), ring, level, values=values,
                   y_invertible=data.get("support") == "y_invertible")


def _value_to_json(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, PadicElt):
        return {"val": v.val, "unit": v.unit, "prec": v.prec}
    raise RingMismatch(f"cannot serialize {type(v).__name__}")


def _value_from_json(v, ring):
    if isinstance(v, str):
        return Fraction(v)
    return PadicElt(ring.p, v["val"], v["unit"], v["prec"])


def _ring_from_tag(tag: str, field: FieldData, level: int):
    if tag == "qq":
        return QQ
    if tag == "zp":
        return PadicRing(field.p, field.precision)
    raise RingMismatch(f"unknown ring tag {tag!r}")


@dataclass(frozen=True, eq=False)
class MonomialFunction(GnFunction):
    """coef * xs^e_xs * xb^e_xb * det(y)^e_det, exact where the point is."""

    field: FieldData
    n: int
    ring: object
    coef: object
    e_xs: int = 0
    e_xb: int = 0
    e_det: int = 0
    y_invertible: bool = dc_field(default=False)

    def __post_init__(self):
        if self.e_det < 0:
            object.__setattr__(self, "y_invertible", True)
        if self.field.mode == "symplectic" and self.e_xb != 0:
            object.__setattr__(self, "e_xs", self.e_xs + self.e_xb)
            object.__setattr__(self, "e_xb", 0)

    def evaluate(self, pt: GnPoint, j: int | None = None):
        if not pt.x_is_unit():
            raise NotAUnit("x coordinate must be a unit")
        if self.y_invertible and not pt.y_is_invertible():
            return self.ring.zero()
        if self.ring.tag == "qq":
            x = pt.x if pt.x is not None else None
            if x is None or not x.is_rational:
                raise RingMismatch("rational-ring monomials need a rational point")
            d = pt.det_y_exact()
            if not d.is_rational:
                raise RingMismatch("determinant is not rational")
            if d.u == 0:
                return Fraction(0) if self.e_det >= 0 else self.ring.zero()
            return (Fraction(self.coef) * x.u ** (self.e_xs + self.e_xb)
                    * d.u ** self.e_det)
        if self.ring.tag == "zp":
            xc = pt.x_cm(self.field.precision)
            d = pt.det_y_padic(self.field.precision)
            if self.e_det < 0 and not d.is_unit:
                return self.ring.zero()
            out = self.ring.coerce(self.coef) * xc.xs ** self.e_xs
            if self.e_xb:
                out = out * xc.xb ** self.e_xb
            if self.e_det:
                out = out * d ** self.e_det
            return out
        raise RingMismatch("monomials live over the rational or p-adic ring")

    def truncate(self, j: int) -> LCFunction:
        """The level-j locally constant shadow of the monomial."""
        ring = self.ring
        pj = self.field.p ** j
        me = self

        def rule(xk: XKey, yk: YKey):
            d = y_det_key(yk, me.n, pj)
            if d % me.field.p == 0:
                if me.e_det < 0 or me.y_invertible:
                    return ring.zero()
            e = (pow(xk[0], me.e_xs, pj) * pow(xk[1], me.e_xb, pj)
                 * pow(d, me.e_det, pj)) % pj
            return ring.coerce(me.coef) * ring.coerce(
                PadicElt(me.field.p, 0, e, j) if e % me.field.p else
                PadicElt.from_int(e, me.field.p, j).with_abs_prec(j))

        return LCFunction(self.field, self.n, ring, j, rule=rule,
                          y_invertible=self.y_invertible)


@dataclass(frozen=True, eq=False)
class ProductFunction(GnFunction):
    """Pointwise product of a base function and a multiplier callable."""

    field: FieldData
    n: int
    ring: object
    base: GnFunction
    multiplier: Callable[[GnPoint, object], object]
    y_invertible: bool = False

    def evaluate(self, pt: GnPoint, j: int | None = None):
        v = self.base.evaluate(pt, j)
        if self.ring.is_zero(v):
            return v
        return v * self.multiplier(pt, self.ring)


@dataclass(frozen=True, eq=False)
class LinearCombination(GnFunction):
    field: FieldData
    n: int
    ring: object
    terms: tuple  # of (scalar, GnFunction)

    @property
    def y_invertible(self):
        return all(f.y_invertible for _, f in self.terms)

    def evaluate(self, pt: GnPoint, j: int | None = None):
        out = self.ring.zero()
        for c, f in self.terms:
            out = out + self.ring.coerce(c) * f.evaluate(pt, j)
        return out


@dataclass(frozen=True, eq=False)
class ContinuousFunction(GnFunction):
    """A continuous function given through its truncation oracle."""

    field: FieldData
    n: int
    ring: object
    oracle: Callable[[int], GnFunction]
    y_invertible: bool = False

    def truncate(self, j: int) -> GnFunction:
        return self.oracle(j)

    def evaluate(self, pt: GnPoint, j: int | None = None):
        if j is None:
            raise LevelMismatch("continuous functions need a precision level")
        return self.oracle(j).evaluate(pt, j)

    def check_consistency(self, points, levels) -> bool:
        """Truncations must agree mod p^j for j <= j'."""
        p = self.field.p
        for j in levels:
            for j2 in levels:
                if j >= j2:
                    continue
                fj, fj2 = self.oracle(j), self.oracle(j2)
                for pt in points:
                    a = fj.evaluate(pt, j)
                    b = fj2.evaluate(pt, j2)
                    if not _congruent(a, b, p, j):
                        return False
        return True


def _congruent(a, b, p: int, j: int) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        diff = a - b
        return diff == 0 or _vp_fraction(diff, p) >= j
    return a.congruent_mod(b, j)


def evaluate(f: GnFunction, pt: GnPoint, j: int | None = None):
    """Evaluate f at pt; p-adic results are truncated to absolute precision j."""
    v = f.evaluate(pt, j)
    if j is not None and isinstance(v, PadicElt):
        return v.with_abs_prec(j)
    return v


# -- the integrand/coefficient bridge ----------------------------------------


def _bridge_exponents(n: int, mode: str, forward: bool) -> tuple[int, int, int]:
    """Monomial exponent shift for h_to_f (forward) or f_to_h."""
    if mode == "symplectic":
        dxs, dxb, dd = n * (n - 1), 0, n
    else:
        dxs, dxb, dd = n * (n - 1), n * n, n
    if forward:
        return -dxs, -dxb, -dd
    # the det divisor enters with the same sign in both directions
    return dxs, dxb, -dd


def h_to_f(h: GnFunction) -> GnFunction:
    """From a unit-invariant integrand to its coefficient function.

    f(x, y) = h(x, y^-1) / weight-(n,0) norm of (x^-1 * relnorm(x)^n * det y).
    """
    return _bridge(h, forward=True)


def f_to_h(f: GnFunction) -> GnFunction:
    """Inverse bridge: h(x, y) = f(x, y^-1) / norm of (x * relnorm(x)^-n * det y)."""
    return _bridge(f, forward=False)


def _bridge(g: GnFunction, forward: bool) -> GnFunction:
    field, n = g.field, g.n
    if isinstance(g, MonomialFunction):
        dxs, dxb, dd = _bridge_exponents(n, field.mode, forward)
        return MonomialFunction(field, n, g.ring, g.coef,
                                g.e_xs + dxs, g.e_xb + dxb, -g.e_det + dd)
    if isinstance(g, LinearCombination):
        return LinearCombination(field, n, g.ring,
                                 tuple((c, _bridge(f, forward)) for c, f in g.terms))
    if isinstance(g, ContinuousFunction):
        return ContinuousFunction(field, n, g.ring,
                                  lambda j: _bridge(g.oracle(j), forward),
                                  y_invertible=True)
    if isinstance(g, LCFunction):
        return _bridge_table(g, forward)
    raise RingMismatch(f"no bridge for {type(g).__name__}")


def _bridge_factor_key(xk: XKey, yk: YKey, field: FieldData, n: int,
                       pj: int, forward: bool) -> int:
    """The inverted norm factor as a unit residue mod p^j."""
    d = y_det_key(yk, n, pj)
    nx = x_norm_key(xk, field, pj)
    if forward:
        u = pow(xk[0], -1, pj) * pow(nx, n, pj) * d % pj
    else:
        u = xk[0] * pow(nx, -n, pj) * d % pj
    return pow(u, -n, pj)


def _bridge_table(g: LCFunction, forward: bool) -> LCFunction:
    field, n, p = g.field, g.n, g.field.p
    pj = p ** g.level
    if not isinstance(g.ring, PadicRing):
        raise RingMismatch("the table bridge needs p-adic coefficients")
    if g.values is not None:
        out = {}
        for (xk, yk), v in g.values.items():
            yk2 = y_inverse_key(yk, n, p, pj)
            fac = _bridge_factor_key(xk, yk2, field, n, pj, forward)
            out[(xk, yk2)] = v * PadicElt(p, 0, fac, g.level)
        return LCFunction(field, n, g.ring, g.level, values=out,
                          y_invertible=True)

    def rule(xk: XKey, yk: YKey):
        yk2 = y_inverse_key(yk, n, p, pj)
        fac = _bridge_factor_key(xk, yk, field, n, pj, forward)
        return g.rule(xk, yk2) * PadicElt(p, 0, fac, g.level)

    return LCFunction(field, n, g.ring, g.level, rule=rule, y_invertible=True)


# -- weight twist --------------------------------------------------------------


def weight_twist(f: GnFunction, w: Weight) -> GnFunction:
    """Multiply by the weight-(k-n, nu) norm of x^-1 * relnorm(x)^n * det y.

    Reduces an expansion of weight (k, nu) to the base weight (n, 0).
    """
    field, n = f.field, f.n
    kp, nu = w.k - n, w.nu
    if isinstance(f, MonomialFunction):
        if field.mode == "symplectic":
            dxs, dxb, dd = (n - 1) * kp, 0, kp
        else:
            dxs = (n - 1) * (kp + nu) + n * (-nu)
            dxb = n * (kp + nu) - (n - 1) * nu
            dd = kp
        return MonomialFunction(field, n, f.ring, f.coef,
                                f.e_xs + dxs, f.e_xb + dxb, f.e_det + dd,
                                y_invertible=f.y_invertible or dd < 0 or nu != 0)
    if isinstance(f, LinearCombination):
        return LinearCombination(field, n, f.ring,
                                 tuple((c, weight_twist(g, w)) for c, g in f.terms))
    if isinstance(f, LCFunction):
        return _twist_table(f, kp, nu)

    def mult(pt: GnPoint, ring):
        return _twist_value(pt, kp, nu, ring)

    return ProductFunction(field, n, f.ring, f, mult, y_invertible=True)


def _twist_value(pt: GnPoint, kp: int, nu: int, ring):
    field, n = pt.field, pt.n
    if ring.tag == "qq":
        x = pt.x
        if x is None or not x.is_rational:
            raise RingMismatch("rational twist needs a rational point")
        d = pt.det_y_exact()
        u = norm_rel_exact(x, field) ** n * d.u / x.u
        return Fraction(u) ** kp  # rational u: the nu-part cancels
    xc = pt.x_cm()
    nr = xc.norm_relative()
    d = pt.det_y_padic()
    us = xc.xs.invert() * nr ** n * d
    ub = xc.xb.invert() * nr ** n * d
    return us ** (kp + nu) * ub ** (-nu)


def _twist_table(f: LCFunction, kp: int, nu: int) -> LCFunction:
    field, n, p = f.field, f.n, f.field.p
    pj = p ** f.level
    if not isinstance(f.ring, PadicRing):
        raise RingMismatch("the table twist needs p-adic coefficients")

    def factor(xk: XKey, yk: YKey) -> int:
        d = y_det_key(yk, n, pj)
        if d % p == 0:
            raise SupportNotInvertible("twist needs invertible y cosets")
        nx = x_norm_key(xk, field, pj)
        us = pow(xk[0], -1, pj) * pow(nx, n, pj) * d % pj
        ub = pow(xk[1], -1, pj) * pow(nx, n, pj) * d % pj
        return pow(us, kp + nu, pj) * pow(ub, -nu, pj) % pj

    if f.values is not None:
        out = {}
        for (xk, yk), v in f.values.items():
            out[(xk, yk)] = v * PadicElt(p, 0, factor(xk, yk), f.level)
        return LCFunction(field, n, f.ring, f.level, values=out,
                          y_invertible=True)

    def rule(xk, yk):
        return f.rule(xk, yk) * PadicElt(p, 0, factor(xk, yk), f.level)

    return LCFunction(field, n, f.ring, f.level, rule=rule, y_invertible=True)


# -- unit equivariance ---------------------------------------------------------


@dataclass(frozen=True)
class EquivarianceReport:
    passed: bool
    witness: tuple | None = None


def unit_weight_factor(e: KNum, w: Weight, field: FieldData) -> KNum:
    """Weight norm of an integral unit, kept exact."""
    return e ** (w.k + 2 * w.nu) * field.K(e.norm()) ** (-w.nu)


def _factor_in_ring(fac: KNum, ring, field: FieldData):
    if ring.tag == "qq":
        if not fac.is_rational:
            return None
        return Fraction(fac.u)
    if ring.tag == "zp":
        return field.sigma_padic(fac)
    raise RingMismatch("equivariance checks support qq and zp rings")


def check_equivariance(f: GnFunction, w: Weight, points,
                       j: int | None = None) -> EquivarianceReport:
    """Does f transform under integral units with the weight-(k, nu) norm?"""
    field = f.field
    for e in field.unit_group:
        fac = _factor_in_ring(unit_weight_factor(e, w, field), f.ring, field)
        for pt in points:
            lhs = f.evaluate(pt.unit_translate(e), j)
            rhs = f.evaluate(pt, j)
            if fac is None:
                ok = f.ring.is_zero(lhs) and f.ring.is_zero(rhs)
            else:
                ok = f.ring.eq(lhs, fac * rhs)
            if not ok:
                return EquivarianceReport(False, (e, pt))
    return EquivarianceReport(True)


def check_unit_invariance(h: GnFunction, points,
                          j: int | None = None) -> EquivarianceReport:
    """Integrands must satisfy h(e*x, relnorm(e)*y) = h(x, y)."""
    field = h.field
    for e in field.unit_group:
        ei = e.inverse()
        for pt in points:
            lhs = h.evaluate(pt.unit_translate(ei), j)
            rhs = h.evaluate(pt, j)
            if not h.ring.eq(lhs, rhs):
                return EquivarianceReport(False, (e, pt))
    return EquivarianceReport(True)


def symmetrize(f: LCFunction, w: Weight) -> LCFunction:
    """Average over integral units so the result is weight-(k, nu) equivariant."""
    field, p = f.field, f.field.p
    if f.values is None:
        raise RingMismatch("symmetrize needs a table")
    pj = p ** f.level
    units = field.unit_group
    inv_order = f.ring.scalar(Fraction(1, len(units)))
    out: dict = {}
    for e in units:
        fac = _factor_in_ring(unit_weight_factor(e, w, field), f.ring, field)
        if fac is None:
            raise RingMismatch("unit factor does not live in the table ring")
        fac_inv = f.ring.invert(f.ring.coerce(fac))
        es = field.sigma_residue(e, f.level)
        eb = field.sigma_bar_residue(e, f.level)
        nrm = field.sigma_residue(field.K(norm_rel_exact(e, field)), f.level)
        nrm_inv = pow(nrm, -1, pj)
        ei_s, ei_b = pow(es, -1, pj), pow(eb, -1, pj)
        for (xk, yk), v in f.values.items():
            key = ((xk[0] * ei_s % pj, xk[1] * ei_b % pj),
                   tuple(c * nrm % pj for c in yk))
            add = inv_order * fac_inv * v
            key_v = out.get(key)
            out[key] = add if key_v is None else key_v + add
    out = {k: v for k, v in out.items() if not f.ring.is_zero(v)}
    return LCFunction(field, f.n, f.ring, f.level, values=out,
                      y_invertible=f.y_invertible)


# -- characters and partition functions ---------------------------------------


def _primitive_root(p: int, j: int) -> int:
    """Smallest generator of the units mod p^j (p an odd prime)."""
    pj = p ** j
    order = (p - 1) * p ** (j - 1)
    fac = _prime_factors(order)
    for g in range(2, pj):
        if g % p == 0:
            continue
        if all(pow(g, order // q, pj) != 1 for q in fac):
            return g
    raise ValueError("no primitive root found")


def _prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _dlog_table(p: int, j: int) -> tuple[int, dict[int, int], int]:
    g = _primitive_root(p, j)
    pj = p ** j
    order = (p - 1) * p ** (j - 1)
    table, cur = {}, 1
    for e in range(order):
        table[cur] = e
        cur = cur * g % pj
    return g, table, order


def teichmuller(u: int, p: int, prec: int) -> PadicElt:
    """The Teichmuller representative congruent to u mod p."""
    if u % p == 0:
        raise NotAUnit("Teichmuller lift of a non-unit")
    pk = p ** prec
    x = u % pk
    for _ in range(prec):
        x = pow(x, p, pk)
    return PadicElt(p, 0, x, prec)


@dataclass(frozen=True)
class UnitCharacter:
    """A finite-order character on the units mod p^level, extended by zero."""

    p: int
    level: int
    ring: object
    values: dict[int, object]

    def __call__(self, residue: int):
        r = residue % self.p ** self.level
        if r % self.p == 0:
            return self.ring.zero()
        return self.values[r]

    @classmethod
    def trivial(cls, p: int, level: int, ring) -> "UnitCharacter":
        pj = p ** level
        return cls(p, level, ring,
                   {r: ring.one() for r in range(1, pj) if r % p})

    @classmethod
    def teichmuller_power(cls, t: int, p: int, level: int,
                          prec: int) -> "UnitCharacter":
        """x -> teich(x)^t, p-adically valued."""
        ring = PadicRing(p, prec)
        pj = p ** level
        vals = {r: teichmuller(r, p, prec) ** t
                for r in range(1, pj) if r % p}
        return cls(p, level, ring, vals)

    @classmethod
    def from_exponent(cls, t: int, p: int, level: int) -> "UnitCharacter":
        """The character g^e -> zeta^(t*e) over the cyclotomic ring."""
        g, dlog, order = _dlog_table(p, level)
        ring = CyclotomicRing(order)
        vals = {r: ring.root(t * e % order) for r, e in dlog.items()}
        return cls(p, level, ring, vals)


def character_decompose(f: LCFunction):
    """Split a table into components transforming by x-group characters.

    Returns a list of (label, component) pairs; labels are exponent tuples
    with respect to the fixed generator of the unit group mod p^level.
    The reconstruction sum of the components is exactly f.
    """
    field, p, j = f.field, f.field.p, f.level
    if f.values is None:
        raise RingMismatch("decomposition needs a table")
    g, dlog, order = _dlog_table(p, j)
    pj = p ** j
    sympl = field.mode == "symplectic"
    group = ([(u, u) for u in dlog] if sympl
             else [(u1, u2) for u1 in dlog for u2 in dlog])
    gsize = len(group)

    ring = f.ring
    if isinstance(ring, PadicRing):
        if j > 1:
            raise GroupOrderNotInvertible(
                "the x-group order is divisible by p at this level; "
                "use the cyclotomic ring")
        zeta = teichmuller(g, p, ring.prec)
        root_pow = {e: zeta ** e for e in range(order)}
        out_ring = ring
        table = {k: v for k, v in f.values.items()}
    else:
        out_ring = CyclotomicRing(order)
        root_pow = {e: out_ring.root(e) for e in range(order)}
        table = {k: out_ring.coerce(v) for k, v in f.values.items()}

    inv_size = out_ring.scalar(Fraction(1, gsize))
    labels = ([(t,) for t in range(order)] if sympl
              else [(t1, t2) for t1 in range(order) for t2 in range(order)])
    components = []
    for label in labels:
        comp: dict = {}
        for (u1, u2) in group:
            e = sum(t * d for t, d in zip(label, (dlog[u1], dlog[u2])))
            chi_inv = root_pow[-e % order]
            ui1, ui2 = pow(u1, -1, pj), pow(u2, -1, pj)
            for (xk, yk), v in table.items():
                key = ((xk[0] * ui1 % pj, xk[1] * ui2 % pj), yk)
                add = inv_size * chi_inv * v
                prev = comp.get(key)
                comp[key] = add if prev is None else prev + add
        comp = {k: v for k, v in comp.items() if not out_ring.is_zero(v)}
        if comp:
            components.append((label, LCFunction(
                field, f.n, out_ring, j, values=comp,
                y_invertible=f.y_invertible)))
    return components


@dataclass(frozen=True)
class PartitionSpec:
    """An ordered partition of n with one unit character per part."""

    n: int
    parts: tuple[int, ...]
    characters: tuple[UnitCharacter, ...]

    def __post_init__(self):
        if sum(self.parts) != self.n:
            raise ValueError("parts must sum to n")
        if len(self.parts) != len(self.characters):
            raise ValueError("one character per part required")


def partition_function(spec: PartitionSpec, chi: tuple[UnitCharacter, UnitCharacter],
                       field: FieldData, level: int) -> LCFunction:
    """chi(x) * (first component of x)^n * product of characters of nested minors.

    The minors are the leading principal minors of relnorm(x) * transpose(y)
    of cumulative sizes given by the partition.
    """
    n = spec.n
    for ch in (*spec.characters, *chi):
        if ch.level > level:
            raise LevelMismatch("character level exceeds the table level")
    ring = spec.characters[0].ring
    p = field.p
    pj = p ** level
    cum = []
    tot = 0
    for part in spec.parts:
        tot += part
        cum.append(tot)

    def rule(xk: XKey, yk: YKey):
        nx = x_norm_key(xk, field, pj)
        m = [[nx * yk[b * n + a] % pj for b in range(n)] for a in range(n)]
        out = chi[0](xk[0]) * chi[1](xk[1])
        out = out * ring.coerce(PadicElt(p, 0, pow(xk[0], n, pj), level))
        for ch, c in zip(spec.characters, cum):
            minor = _minor_mod(m, c, pj)
            v = ch(minor)
            if ring.is_zero(v):
                return ring.zero()
            out = out * v
        return out

    return LCFunction(field, n, ring, level, rule=rule)


def _minor_mod(m, c: int, pj: int) -> int:
    if c == 1:
        return m[0][0] % pj
    if c == 2:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % pj
    raise UnsupportedSize("minors for n <= 2 only")


# -- random tables (test and CLI support) --------------------------------------


def random_lc_function(field: FieldData, n: int, level: int, rng,
                       entries: int = 12, y_invertible: bool = True,
                       prec: int | None = None) -> LCFunction:
    """A sparse random table with p-adic unit values."""
    p = field.p
    pj = p ** level
    prec = prec or level
    ring = PadicRing(p, prec)
    values = {}
    while len(values) < entries:
        if field.mode == "symplectic":
            u = rng.randrange(1, pj)
            if u % p == 0:
                continue
            xk = (u, u)
        else:
            x1, x2 = rng.randrange(1, pj), rng.randrange(1, pj)
            if x1 % p == 0 or x2 % p == 0:
                continue
            xk = (x1, x2)
        yk = tuple(rng.randrange(pj) for _ in range(n * n))
        if y_invertible and y_det_key(yk, n, pj) % p == 0:
            continue
        v = rng.randrange(1, pj)
        if v % p == 0:
            continue
        values[(xk, yk)] = PadicElt(p, 0, v, prec)
    return LCFunction(field, n, ring, level, values=values,
                      y_invertible=y_invertible)
