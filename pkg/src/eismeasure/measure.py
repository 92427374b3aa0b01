"""Integration of locally constant and continuous functions against the measure.

The defining property: integrating a unit-invariant integrand h equals the
base-weight expansion attached to the bridged coefficient function
``h_to_f(h)``.  Moments against polynomial multipliers are computed through
two independent routes (a product integrand, and coefficientwise
multiplication) and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .diffops import MatrixPolynomial, theta_apply
from .errors import EquivarianceViolation, HypothesisViolation, ShapeMismatch
from .fields import FieldData, Weight
from .functions import (
    ContinuousFunction,
    GnFunction,
    GnPoint,
    MonomialFunction,
    ProductFunction,
    check_unit_invariance,
    h_to_f,
    norm_rel_exact,
)
from .hermitian import CuspData
from .qexp import QExpansion, _sample_points, eisenstein_qexp
from .rings import QQ


@dataclass(frozen=True)
class MeasureContext:
    """Everything needed to integrate: field, rank, cusp and bounds."""

    field: FieldData
    cusp: CuspData
    trace_bound: int
    precision: int | None = None

    @property
    def n(self) -> int:
        return self.cusp.n

    @classmethod
    def rank_one(cls, field: FieldData, trace_bound: int,
                 precision: int | None = None) -> "MeasureContext":
        return cls(field, CuspData.divisor_rule(field), trace_bound, precision)


def integrate(h: GnFunction, ctx: MeasureContext,
              validate: bool = True) -> QExpansion:
    """Integrate a unit-invariant function; returns the base-weight expansion."""
    f = h_to_f(h)
    if validate:
        from .hermitian import enumerate_positive
        betas = enumerate_positive(ctx.field, ctx.n, ctx.trace_bound)
        pts = _sample_points(ctx.field, ctx.cusp, betas)
        rep = check_unit_invariance(h, pts, j=ctx.precision)
        if not rep.passed:
            raise EquivarianceViolation(
                f"integrand is not unit invariant at {rep.witness}")
    return eisenstein_qexp(f, Weight(ctx.n, 0), ctx.cusp, ctx.trace_bound,
                           ctx.field, precision=ctx.precision,
                           validate=validate)


def _zeta_multiplier(mult: MatrixPolynomial):
    """The function (x, y) -> mult(relnorm(x) * y) as a pointwise factor."""

    def value(pt: GnPoint, ring):
        field = pt.field
        if ring.tag == "qq":
            nx = norm_rel_exact(pt.x, field)
            m = [[e * nx for e in row] for row in pt.y]
            v = mult.eval_knum(m)
            if not v.is_rational:
                raise ShapeMismatch("multiplier value is not rational")
            return Fraction(v.u)
        nx = pt.x_cm().norm_relative()
        if pt.y_padic is not None:
            m = [[e * nx for e in row] for row in pt.y_padic]
        else:
            m = [[field.sigma_padic(e) * nx for e in row] for row in pt.y]
        return mult.eval_matrix(m, ring)

    return value


def moment_zeta(h: GnFunction, mult: MatrixPolynomial, ctx: MeasureContext,
                verify: bool = True) -> QExpansion:
    """Integrate h times the multiplier evaluated at relnorm(x) * y^-1.

    Equals coefficientwise multiplication of integrate(h) by the multiplier
    value at each index; with verify=True both routes are computed and must
    agree exactly.
    """
    f = h_to_f(h)
    # on the coefficient side the multiplier argument y^-1 turns back into y
    f2 = ProductFunction(f.field, f.n, f.ring, f, _zeta_multiplier(mult),
                         y_invertible=True)
    q = eisenstein_qexp(f2, Weight(ctx.n, 0), ctx.cusp, ctx.trace_bound,
                        ctx.field, precision=ctx.precision, validate=False)
    if verify:
        base = integrate(h, ctx, validate=False)
        other = theta_apply(base, mult)
        if not q == other:
            raise ShapeMismatch("moment routes disagree")
    return q


def moment_detd(h: GnFunction, d: int, ctx: MeasureContext,
                verify: bool = True) -> QExpansion:
    """The determinant-power moment, labeled with the shifted weight.

    Computed as the det^d polynomial moment; the result carries weight
    (n + 2d, -d).  With verify=True the product-integrand route is checked
    against coefficientwise multiplication by det(beta)^d.
    """
    from .diffops import det_polynomial
    n = ctx.n
    mult = det_polynomial(n, n)
    for _ in range(d - 1):
        mult = mult * det_polynomial(n, n)
    if d == 0:
        mult = MatrixPolynomial.constant(n, 1)
    q = moment_zeta(h, mult, ctx, verify=verify)
    return QExpansion(q.field, q.n, Weight(n + 2 * d, -d), q.cusp_label,
                      q.trace_bound, q.ring, q.terms)


@dataclass(frozen=True)
class KummerReport:
    passed: bool
    checked: int
    witness: tuple | None
    modulus_exponent: int


def kummer_check(field: FieldData, k: int, k2: int, m: int,
                 trace_bound: int,
                 modulus_exponent: int | None = None) -> KummerReport:
    """Congruence of the rank-one moments of x^(k-1) and x^(k2-1).

    Both integrals are computed exactly over the rationals; away from p the
    coefficients must agree mod p^(m+1) whenever k = k2 mod (p-1)p^m.  The
    modulus exponent can be raised past the guaranteed m+1 to probe for
    failures.
    """
    p = field.p
    if k < 1 or k2 < 1:
        raise HypothesisViolation("weights must be positive")
    if (k - k2) % ((p - 1) * p ** m) != 0:
        raise HypothesisViolation(
            f"{k} and {k2} are not congruent mod (p-1)p^{m}")
    ctx = MeasureContext.rank_one(field, trace_bound)
    h1 = MonomialFunction(field, 1, QQ, Fraction(1), e_xs=k - 1)
    h2 = MonomialFunction(field, 1, QQ, Fraction(1), e_xs=k2 - 1)
    q1 = integrate(h1, ctx, validate=False)
    q2 = integrate(h2, ctx, validate=False)
    j = m + 1 if modulus_exponent is None else modulus_exponent
    ok, witness = q1.congruent_mod(q2, j, skip_p_divisible_trace=True)
    checked = sum(1 for _, (b, _c) in q1.terms.items()
                  if int(b.trace()) % p != 0)
    return KummerReport(ok, checked, witness, j)
