from fractions import Fraction as F
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bvlcone.numerics import InputError, min_eigenvalue
from bvlcone.oracle import beta_moment_integral
from bvlcone.polys import HomogPoly
from bvlcone.sphere_moments import (
    Membership,
    basis_multiindices,
    exact_psd_witness,
    moment_matrix,
    moment_matrix_exact,
    membership_test,
    monomial_sphere_integral,
    quadratic_form,
    sphere_integral,
)

MOTZKIN = HomogPoly.from_terms(3, [(1, (4, 2, 0)), (1, (2, 4, 0)), (-3, (2, 2, 2)), (1, (0, 0, 6))])


def test_basis_examples():
    assert basis_multiindices(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert basis_multiindices(3, 0) == ((0, 0, 0),)
    assert len(basis_multiindices(3, 6)) == comb(8, 2)


@pytest.mark.parametrize("n,deg", [(1, 3), (2, 5), (4, 4), (5, 2)])
def test_basis_count_and_order(n, deg):
    b = basis_multiindices(n, deg)
    assert len(b) == comb(n + deg - 1, n - 1)
    assert list(b) == sorted(b, reverse=True)
    assert all(sum(a) == deg for a in b)


def test_monomial_integrals():
    assert monomial_sphere_integral((0, 0, 0)) == 1
    for n in range(2, 8):
        assert monomial_sphere_integral((2,) + (0,) * (n - 1)) == F(1, n)
    assert monomial_sphere_integral((4, 0, 0)) == F(1, 5)
    assert monomial_sphere_integral((2, 2, 0)) == F(1, 15)
    assert monomial_sphere_integral((1, 0, 0)) == 0
    with pytest.raises(ValueError):
        monomial_sphere_integral((2,))


def test_matches_beta_oracle():
    for n in range(2, 6):
        for deg in range(9):
            for a in basis_multiindices(n, deg):
                assert monomial_sphere_integral(a) == beta_moment_integral(a)


def test_sphere_power_integrates_to_one():
    for n in (2, 3, 5):
        for d in range(4):
            assert sphere_integral(HomogPoly.sphere_power(n, d)) == 1


def test_gram_matrix_positive_definite():
    for n, d, k in [(2, 1, 1), (3, 1, 2), (3, 2, 1), (4, 1, 1)]:
        m = moment_matrix(HomogPoly.sphere_power(n, d), k)
        assert m.dim == comb(n + 2 * k - 1, n - 1)
        assert min_eigenvalue(m) > 0


def test_moment_matrix_linear():
    p = HomogPoly.from_terms(3, [(1, (2, 0, 0)), (-2, (1, 1, 0))])
    q = HomogPoly.from_terms(3, [(F(1, 3), (0, 0, 2)), (5, (0, 1, 1))])
    mp, mq, mpq = (moment_matrix_exact(x, 1) for x in (p, q, p + q))
    for i in range(len(mp)):
        for j in range(len(mp)):
            assert mpq[i][j] == mp[i][j] + mq[i][j]


def test_symmetric_difference_vanishes():
    p = HomogPoly.monomial((2, 0)) - HomogPoly.monomial((0, 2))
    assert moment_matrix_exact(p, 0) == [[0]]


def test_odd_degree_rejected():
    with pytest.raises(InputError):
        moment_matrix(HomogPoly.monomial((3, 0)), 1)


def test_motzkin_inside():
    for k in (3, 4, 5):
        assert membership_test(MOTZKIN, k).verdict is Membership.INSIDE


def test_sphere_power_inside_and_negation_outside():
    for k in range(3):
        assert membership_test(HomogPoly.sphere_power(3, 2), k).verdict is Membership.INSIDE
    res = membership_test(-HomogPoly.sphere_power(3, 2), 0)
    assert res.verdict is Membership.OUTSIDE
    assert res.witness_poly() == HomogPoly(3, 0, {(0, 0, 0): 1})
    assert res.witness_value < 0


@pytest.mark.parametrize("d", [1, 2])
def test_eventually_outside(d):
    p = HomogPoly.sphere_power(3, d) - HomogPoly.monomial((2 * d, 0, 0), F(3, 2))
    hits = [k for k in range(11) if membership_test(p, k).outside]
    assert hits
    res = membership_test(p, hits[0])
    exact = moment_matrix_exact(p, hits[0])
    assert quadratic_form(exact, res.witness) == res.witness_value < 0


def test_exact_witness():
    assert exact_psd_witness([[F(1), F(1)], [F(1), F(1)]]) is None
    for mat in ([[F(0), F(1)], [F(1), F(0)]], [[F(1), F(2)], [F(2), F(1)]], [[F(-1)]]):
        v = exact_psd_witness(mat)
        assert quadratic_form(mat, v) < 0


def test_borderline_without_tiebreak():
    res = membership_test(MOTZKIN, 5, exact_tiebreak=False)
    assert res.verdict in (Membership.INSIDE, Membership.BORDERLINE)
    assert abs(res.min_eigenvalue) < 1e-3


def _random_indefinite_form(seed):
    """Random ternary quartic that takes both signs on the sphere."""
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((400, 3))
    basis = basis_multiindices(3, 4)
    while True:
        coeffs = rng.integers(-5, 6, size=len(basis))
        # a random multiple of s^2 keeps some forms close to nonnegative
        p = HomogPoly.from_terms(3, list(zip(coeffs.tolist(), basis))) + HomogPoly.sphere_power(3, 2) * int(rng.integers(0, 12))
        vals = [float(p(tuple(x))) for x in pts]
        if min(vals) < 0 < max(vals):
            return p


@pytest.mark.parametrize("seed", range(20))
def test_outside_is_monotone(seed):
    p = _random_indefinite_form(seed)
    outs = [membership_test(p, k).outside for k in range(4)]
    first = outs.index(True) if True in outs else len(outs)
    assert all(outs[first:])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_outside_certificates_are_exact(coeffs):
    p = HomogPoly.from_terms(3, [(c, a) for c, a in zip(coeffs, basis_multiindices(3, 2))])
    if p.is_zero():
        return
    for k in (0, 1):
        res = membership_test(p, k)
        if res.outside:
            assert quadratic_form(moment_matrix_exact(p, k), res.witness) < 0
