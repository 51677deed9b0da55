from fractions import Fraction as F

import pytest

from bvlcone.harmonics import (
    bessel_j0_first_zero,
    classical_comparison,
    gatteschi_root,
    harmonic_decompose,
    harmonic_dim,
    largest_legendre_root,
    legendre,
    marginal_moments,
    reproduces_at_pole,
    weighted_inner,
    zonal_profile,
)
from bvlcone.polys import HomogPoly, UniPoly
from bvlcone.sphere_moments import basis_multiindices, monomial_sphere_integral


def _three_term(m):
    p0, p1 = UniPoly([1]), UniPoly([0, 1])
    if m == 0:
        return p0
    for j in range(2, m + 1):
        p0, p1 = p1, (UniPoly([0, 2 * j - 1]) * p1 - p0 * (j - 1)) / j
    return p1


def test_legendre_small_cases():
    assert legendre(2) == UniPoly([F(-1, 2), 0, F(3, 2)])
    assert legendre(4) == UniPoly([F(3, 8), 0, F(-30, 8), 0, F(35, 8)])


def test_legendre_matches_recurrence():
    for m in range(31):
        assert legendre(m) == _three_term(m)
        assert legendre(m)(F(1)) == 1


def test_harmonic_dim():
    assert harmonic_dim(5, 0) == 1
    assert harmonic_dim(5, 1) == 5
    assert harmonic_dim(3, 4) == 9
    assert harmonic_dim(4, 2) == 9
    assert all(harmonic_dim(3, m) == 2 * m + 1 for m in range(20))


def test_zonal_profiles():
    assert zonal_profile(4, 2) == UniPoly([F(-1, 3), 0, F(4, 3)])
    for m in range(21):
        assert zonal_profile(3, m) == legendre(m)
    for n in range(2, 7):
        for m in range(13):
            assert zonal_profile(n, m)(F(1)) == 1


def test_orthogonality():
    for n in range(2, 7):
        profs = [zonal_profile(n, m) for m in range(13)]
        for a in range(13):
            for b in range(a):
                assert weighted_inner(n, profs[a], profs[b]) == 0


def test_classical_comparison():
    assert all(match for _, match in classical_comparison(3, 10))
    assert classical_comparison(5, 4) == [(0, True), (1, True), (2, False), (3, False), (4, False)]


def test_marginal_moments():
    for n in range(2, 8):
        mom = marginal_moments(n, 8)
        assert mom[0] == 1 and mom[2] == F(1, n)
        assert all(mom[j] == 0 for j in (1, 3, 5, 7))
        for j in range(0, 9, 2):
            assert mom[j] == monomial_sphere_integral((j,) + (0,) * (n - 1))
    assert marginal_moments(3, 4)[4] == F(1, 5)


def test_decomposition_examples():
    for n in (2, 3, 5):
        d = harmonic_decompose(HomogPoly.monomial((2,) + (0,) * (n - 1)))
        s = HomogPoly.sphere_power(n, 1)
        assert d.components[0] == HomogPoly.monomial((2,) + (0,) * (n - 1)) - s * F(1, n)
        assert d.components[1] == HomogPoly(n, 0, {(0,) * n: F(1, n)})
    d = harmonic_decompose(HomogPoly.sphere_power(3, 3))
    assert all(c.is_zero() for c in d.components[:-1])
    assert d.components[-1] == HomogPoly(3, 0, {(0, 0, 0): 1})
    assert harmonic_decompose(HomogPoly.monomial((4, 0, 0))).is_exact()


def test_decomposition_round_trip():
    for n in range(2, 5):
        for deg in range(7):
            for a in basis_multiindices(n, deg):
                assert harmonic_decompose(HomogPoly.monomial(a)).is_exact()


def test_reproducing_property():
    for n in (2, 3, 4):
        for m in range(7):
            for a in basis_multiindices(n, m):
                p = harmonic_decompose(HomogPoly.monomial(a)).components[0]
                assert reproduces_at_pole(p)


def test_largest_root():
    assert largest_legendre_root(2) == pytest.approx(3**-0.5, abs=1e-12)
    assert largest_legendre_root(4) == pytest.approx(0.8611363, abs=1e-6)
    for m in range(2, 40):
        r = largest_legendre_root(m)
        assert largest_legendre_root(m - 1) < r < 1
        assert abs(float(legendre(m)(F(r)))) < 1e-10


def test_largest_root_against_exact_isolation():
    for m in (5, 9, 14):
        roots = legendre(m).real_roots(-1, 1, tol=F(1, 10**14))
        assert abs(largest_legendre_root(m) - float(roots[-1])) < 1e-12


def test_gatteschi():
    assert abs(gatteschi_root(2) - largest_legendre_root(4)) < 1e-4
    assert abs(gatteschi_root(10) - largest_legendre_root(20)) < 1e-8
    assert all(0 < gatteschi_root(d) < 1 for d in range(1, 50))


def test_bessel_zero():
    assert bessel_j0_first_zero() == pytest.approx(2.404825557695773, abs=1e-13)
