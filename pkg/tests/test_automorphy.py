"""Numeric factor-of-automorphy identities on the tube domain."""

import random

import numpy as np
import pytest

from eismeasure.errors import NearSingularAutomorphyFactor
from eismeasure.automorphy import (
    DomainPoint,
    GroupElement,
    act,
    base_point,
    cocycle_check,
    delta,
    eta_matrix,
    factors,
    levi_element,
    random_point,
    random_word,
    section_infty,
    selftest,
    translation_element,
    weyl_element,
)

TOL = 1e-9


def test_generators_preserve_the_hermitian_form():
    # g must satisfy conj(g)^T J g = nu J for J the standard skew form
    rng = random.Random(0)
    for n in (1, 2):
        jmat = np.block([[np.zeros((n, n)), -np.eye(n)],
                         [np.eye(n), np.zeros((n, n))]])
        for _ in range(50):
            g = random_word(n, rng)
            lhs = np.conj(g.matrix).T @ jmat @ g.matrix
            assert np.max(np.abs(lhs - g.nu * jmat)) < TOL * max(
                1.0, float(np.max(np.abs(lhs))))


def test_action_stays_in_the_domain():
    rng = random.Random(3)
    for _ in range(100):
        g = random_word(2, rng)
        pt = random_point(2, rng)
        try:
            z2 = act(g, pt)
        except NearSingularAutomorphyFactor:
            continue
        assert np.linalg.eigvalsh(eta_matrix(z2.z)).min() > 0


def test_base_point_delta_is_one():
    for n in (1, 2, 3):
        assert delta(base_point(n).z) == pytest.approx(1.0, abs=1e-14)


def test_cocycle_relations():
    rng = random.Random(5)
    done = 0
    while done < 200:
        try:
            rep = cocycle_check(random_word(2, rng), random_word(2, rng),
                                random_point(2, rng))
        except NearSingularAutomorphyFactor:
            continue
        assert rep.residual < TOL, rep.details
        done += 1


def test_weyl_at_base_point():
    w = weyl_element(1)
    pt = base_point(1)
    lam, mu, jj = factors(w, pt)
    assert jj == pytest.approx(1j)
    assert act(w, pt).z[0][0] == pytest.approx(1j)


def test_translation_requires_hermitian_block():
    with pytest.raises(ValueError):
        translation_element(np.array([[1j]]))


def test_section_positivity_requirement():
    g = GroupElement(-np.eye(2, dtype=complex), -1.0)
    with pytest.raises(ValueError):
        section_infty(g, base_point(1), 4, 0, 3.0)


def test_selftest_meets_tolerance():
    worst = selftest(2, 200, seed=11)
    assert max(worst.values()) < TOL
