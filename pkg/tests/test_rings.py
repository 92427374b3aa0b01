"""Coefficient rings: rationals, capped p-adics, cyclotomic integers."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eismeasure.errors import RingMismatch
from eismeasure.rings import QQ, CycloElt, CyclotomicRing, PadicRing


def test_no_mixing():
    zp = PadicRing(5, 8)
    with pytest.raises(RingMismatch):
        QQ.coerce(zp.one()) + 0  # coercion itself must refuse
    with pytest.raises(RingMismatch):
        zp.coerce(CyclotomicRing(4).one())


def test_integers_coerce_everywhere():
    for ring in (QQ, PadicRing(5, 8), CyclotomicRing(4)):
        x = ring.coerce(3)
        y = ring.coerce(Fraction(1, 2))
        assert ring.eq(x * y + y, ring.scalar(Fraction(2)))


@given(a=st.integers(-50, 50), b=st.integers(-50, 50), m=st.sampled_from([4, 5, 8, 20]))
def test_cyclotomic_root_has_exact_order(a, b, m):
    ring = CyclotomicRing(m)
    z = ring.root(1)
    acc = ring.one()
    for _ in range(m):
        acc = acc * z
    assert ring.eq(acc, ring.one())
    x = ring.scalar(Fraction(a)) + ring.root(1) * ring.scalar(Fraction(b))
    assert ring.eq(x, x)


def test_cyclotomic_minimal_polynomial():
    # in Q(zeta_4): zeta^2 = -1
    ring = CyclotomicRing(4)
    assert ring.eq(ring.root(2), ring.scalar(Fraction(-1)))
    # in Q(zeta_5): 1 + z + z^2 + z^3 + z^4 = 0
    r5 = CyclotomicRing(5)
    total = r5.zero()
    for j in range(5):
        total = total + r5.root(j)
    assert r5.is_zero(total)


def test_cyclotomic_inverse_of_root():
    ring = CyclotomicRing(8)
    assert ring.eq(ring.root(3) * ring.root(5), ring.one())


def test_padic_ring_wraps_elements():
    zp = PadicRing(5, 6)
    x = zp.scalar(Fraction(7, 3))
    y = zp.invert(x)
    assert zp.eq(x * y, zp.one())
    assert zp.is_zero(zp.zero())
