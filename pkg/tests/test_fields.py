"""Imaginary quadratic arithmetic and split-prime embeddings."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eismeasure.errors import FieldDataError
from eismeasure.fields import CMElt, FieldData, KNum, Weight, norm_weight

GAUSS = FieldData(p=5, k_disc=-4)
EISEN = FieldData(p=7, k_disc=-3)
DISC7 = FieldData(p=11, k_disc=-7)
FIELDS = [GAUSS, EISEN, DISC7]

small = st.integers(min_value=-30, max_value=30)


@given(u1=small, v1=small, u2=small, v2=small, fld=st.sampled_from(FIELDS))
def test_norm_is_multiplicative(u1, v1, u2, v2, fld):
    a, b = fld.K(u1, v1), fld.K(u2, v2)
    assert (a * b).norm() == a.norm() * b.norm()


@given(u=small, v=small, fld=st.sampled_from(FIELDS))
def test_conjugation_fixes_norm_and_trace(u, v, fld):
    a = fld.K(u, v)
    assert (a * a.conj()).is_rational
    assert (a * a.conj()).u == a.norm()
    assert (a + a.conj()).is_rational


@given(u=small, v=small, fld=st.sampled_from(FIELDS))
def test_inverse(u, v, fld):
    a = fld.K(u, v)
    if a.norm() == 0:
        return
    assert a * a.inverse() == fld.K(1)


def test_split_roots_satisfy_minimal_polynomial():
    for fld in FIELDS:
        p, prec = fld.p, fld.precision
        s, t = fld.omega_s, fld.omega_t
        for r in fld.split_roots:
            assert (r * r - s * r - t) % p**prec == 0
        r1, r2 = fld.split_roots
        assert (r1 + r2) % p**prec == s % p**prec
        assert r1 % p < r2 % p


def test_hensel_against_direct_search():
    # brute force the roots of w^2 = -1 mod 5^3 and compare
    roots = sorted(r for r in range(125) if (r * r + 1) % 125 == 0)
    fld = FieldData(p=5, k_disc=-4, precision=3)
    assert sorted(r % 125 for r in fld.split_roots) == roots


def test_two_plus_i_embeddings():
    a = GAUSS.K(2, 1)  # norm 5, one embedding is a unit
    assert a.norm() == 5
    emb = GAUSS.sigma_padic(a)
    assert emb.is_unit
    assert emb.lift(1) == 4
    other = GAUSS.sigma_bar_padic(a)
    assert other.val == 1


def test_nonsplit_prime_rejected():
    with pytest.raises(FieldDataError):
        FieldData(p=7, k_disc=-4)  # -4 is not a square mod 7
    with pytest.raises(FieldDataError):
        FieldData(p=2, k_disc=-7)


def test_unit_group_orders():
    assert len(GAUSS.unit_group) == 4
    assert len(EISEN.unit_group) == 6
    assert len(DISC7.unit_group) == 2
    assert len(FieldData(p=5, mode="symplectic").unit_group) == 1
    for fld in FIELDS:
        for e in fld.unit_group:
            assert e.norm() == 1


@given(u=small, v=small, fld=st.sampled_from(FIELDS))
def test_cm_split_respects_multiplication(u, v, fld):
    a = fld.K(u, v)
    if a.norm() % fld.p == 0 or a.norm() == 0:
        return
    ca = CMElt.embed(a, fld)
    cb = CMElt.embed(a.conj(), fld)
    prod = ca * cb
    nrm = CMElt.embed(fld.K(a.norm()), fld)
    assert prod.xs == nrm.xs and prod.xb == nrm.xb


def test_norm_weight_on_units():
    w = Weight(3, 1)
    for e in GAUSS.unit_group:
        b = CMElt.embed(e, GAUSS)
        x = norm_weight(b, w)
        assert x.is_unit
        assert (x * norm_weight(b.invert(), w)).lift(4) == 1


def test_norm_weight_symplectic_is_plain_power():
    fld = FieldData(p=5, mode="symplectic")
    b = CMElt.embed(fld.K(3), fld)
    assert norm_weight(b, Weight(4, 0)).lift(4) == 3**4 % 5**4
    # nu cancels for rational pairs: b^(k+nu) / b^nu = b^k
    assert norm_weight(b, Weight(4, 1)) == norm_weight(b, Weight(4, -1))


def test_norm_weight_nonunit_with_positive_nu():
    # valuations cancel between the two embeddings of a norm-p element
    a = GAUSS.K(2, 1)
    b = CMElt.embed(a * a.conj(), GAUSS)  # embeds 5
    x = norm_weight(b, Weight(2, 1))
    assert x.val == 2


def test_from_config(tmp_path):
    cfg = tmp_path / "field.json"
    cfg.write_text('{"p": 13, "k_disc": -3, "precision": 10}')
    fld = FieldData.from_config(str(cfg))
    assert fld.p == 13 and fld.precision == 10
    fld2 = FieldData.from_config({"p": 5, "k_disc": -4})
    assert fld2 == FieldData(p=5, k_disc=-4)


def test_from_rational_embedding_pinned():
    x = GAUSS.sigma_padic(GAUSS.K(Fraction(3, 2)), prec=3)
    assert x.lift(3) == 3 * pow(2, -1, 125) % 125 == 64
