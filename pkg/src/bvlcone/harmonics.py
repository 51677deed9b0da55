"""Zonal harmonics on S^{n-1} and the univariate objects attached to them.

The restriction of the degree-m zonal harmonic to the sphere is h_m P_{m,n}(u_1)
where P_{m,n} is the degree-m orthogonal polynomial for the weight
w_n(t) ~ (1 - t^2)^{(n-3)/2} on [-1, 1], normalized by P_{m,n}(1) = 1.  Only for
n = 3 is this the classical Legendre polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._exact import binom, factorial, gamma_ratio
from .polys import HomogPoly, UniPoly
from .sphere_moments import sphere_integral

BESSEL_J0_ZERO = 2.404825557695773


@lru_cache(maxsize=None)
def legendre(m: int) -> UniPoly:
    """Classical Legendre polynomial from Rodrigues' formula."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    p = UniPoly([1])
    base = UniPoly([-1, 0, 1])
    for _ in range(m):
        p = p * base
    for _ in range(m):
        p = p.derivative()
    return p / (factorial(m) * 2**m)


def harmonic_dim(n: int, m: int) -> int:
    """Dimension of the space of degree-m harmonic polynomials in n variables."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    if m == 0:
        return 1
    if m == 1:
        return n
    return binom(n + m - 1, n - 1) - binom(n + m - 3, n - 1)


@lru_cache(maxsize=None)
def _even_moment(n: int, j: int) -> Fraction:
    # int t^{2j} w_n(t) dt = B(j + 1/2, (n-1)/2) / B(1/2, (n-1)/2)
    return gamma_ratio([2 * j + 1, n], [1, n + 2 * j])


def marginal_moments(n: int, max_deg: int) -> list[Fraction]:
    """Moments of the first coordinate under the uniform measure on S^{n-1}."""
    if n < 2:
        raise ValueError("need n >= 2")
    return [_even_moment(n, j // 2) if j % 2 == 0 else Fraction(0) for j in range(max_deg + 1)]


def weighted_integral(n: int, p: UniPoly) -> Fraction:
    """int p(t) w_n(t) dt for the normalized marginal weight."""
    mom = marginal_moments(n, max(p.degree, 0))
    return sum((c * mom[i] for i, c in enumerate(p.coeffs)), Fraction(0))


def weighted_inner(n: int, p: UniPoly, q: UniPoly) -> Fraction:
    return weighted_integral(n, p * q)


@lru_cache(maxsize=None)
def zonal_profile(n: int, m: int) -> UniPoly:
    """P_{m,n}: Gram-Schmidt of 1, t, t^2, ... under w_n, scaled to P(1) = 1."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    if m == 0:
        return UniPoly([1])
    t_m = UniPoly([0] * m + [1])
    p = t_m
    # only same-parity lower profiles can overlap with t^m
    for j in range(m - 2, -1, -2):
        prev = zonal_profile(n, j)
        p = p - prev * (weighted_inner(n, t_m, prev) / weighted_inner(n, prev, prev))
    return p / p(Fraction(1))


def homogenize_profile(n: int, prof: UniPoly, degree: int) -> HomogPoly:
    """The form sum_i c_i x_1^i s^{(degree - i)/2}, equal to prof(x_1) on the sphere."""
    out = HomogPoly(n, degree)
    for i, c in enumerate(prof.coeffs):
        if c == 0:
            continue
        if (degree - i) % 2:
            raise ValueError("profile parity does not match the degree")
        x1 = HomogPoly.monomial((i,) + (0,) * (n - 1), c)
        out = out + x1 * HomogPoly.sphere_power(n, (degree - i) // 2)
    return out


@lru_cache(maxsize=None)
def zonal_harmonic(n: int, m: int) -> HomogPoly:
    """Z_m as a degree-m form: h_m P_{m,n}(x_1) homogenized with s = |x|^2."""
    return homogenize_profile(n, zonal_profile(n, m), m) * harmonic_dim(n, m)


def profile_matches_classical(n: int, m: int) -> bool:
    return zonal_profile(n, m) == legendre(m)


def classical_comparison(n: int, max_m: int) -> list[tuple[int, bool]]:
    """For each m <= max_m, whether P_{m,n} coincides with classical Legendre."""
    return [(m, profile_matches_classical(n, m)) for m in range(max_m + 1)]


@dataclass(frozen=True)
class HarmonicDecomposition:
    """q = sum_i s^i components[i], components[i] harmonic of degree m - 2i."""

    source: HomogPoly
    components: tuple[HomogPoly, ...]

    @property
    def degree(self) -> int:
        return self.source.degree

    def reconstruct(self) -> HomogPoly:
        n = self.source.n
        out = HomogPoly(n, self.degree)
        for i, comp in enumerate(self.components):
            out = out + comp * HomogPoly.sphere_power(n, i)
        return out

    def is_exact(self) -> bool:
        return self.reconstruct() == self.source and all(
            c.laplacian().is_zero() for c in self.components
        )


def _harmonic_projection(q: HomogPoly) -> tuple[HomogPoly, HomogPoly]:
    """Split q = p + s r with p harmonic, using p = sum_j a_j s^j Lap^j q."""
    n, m = q.n, q.degree
    p = q
    lap = q
    a = Fraction(1)
    rest = HomogPoly(n, max(m - 2, 0))
    for j in range(m // 2):
        lap = lap.laplacian()
        if lap.is_zero():
            break
        a = -a / (2 * (j + 1) * (n + 2 * m - 2 * j - 4))
        term = lap * a
        p = p + term * HomogPoly.sphere_power(n, j + 1)
        rest = rest - term * HomogPoly.sphere_power(n, j)
    return p, rest


def harmonic_decompose(q: HomogPoly) -> HarmonicDecomposition:
    """Unique decomposition of a form into s-powers times harmonic forms."""
    comps = []
    cur = q
    for _ in range(q.degree // 2 + 1):
        p, cur = _harmonic_projection(cur)
        comps.append(p)
        if cur.is_zero() or q.degree - 2 * len(comps) < 0:
            break
    while len(comps) < q.degree // 2 + 1:
        comps.append(HomogPoly(q.n, q.degree - 2 * len(comps)))
    return HarmonicDecomposition(q, tuple(comps))


def reproduces_at_pole(p: HomogPoly) -> bool:
    """Check int p(u) Z_m(u) dmu == p(e_1) for a harmonic form p of degree m."""
    e1 = (Fraction(1),) + (Fraction(0),) * (p.n - 1)
    return sphere_integral(p * zonal_harmonic(p.n, p.degree)) == p(e1)


# -- roots ----------------------------------------------------------------

def _legendre_and_derivative(m: int, x: float) -> tuple[float, float]:
    p0, p1 = 1.0, x
    if m == 0:
        return 1.0, 0.0
    for j in range(2, m + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    # derivative from the standard identity, valid for |x| < 1
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def largest_legendre_root(m: int) -> float:
    """Largest zero of L_m by Newton's method kept inside a sign bracket.

    The bracket (largest zero of L_{m-1}, 1) comes from interlacing.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        return 0.0
    lo, hi = largest_legendre_root(m - 1), 1.0
    x = gatteschi_root_degree(m) if m >= 6 else 0.9
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    for _ in range(200):
        f, df = _legendre_and_derivative(m, x)
        if f == 0.0:
            return x
        # L_m > 0 to the right of its largest root
        if f > 0:
            hi = x
        else:
            lo = x
        step = f / df if df != 0 else 0.0
        nxt = x - step
        if not lo < nxt < hi or df == 0:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) < 1e-15 or hi - lo < 1e-15:
            return nxt
        x = nxt
    return x


def bessel_j0_first_zero(tol: float = 1e-15) -> float:
    """First positive zero of J_0, by Newton on the power series."""

    def j0_j1(x):
        term = 1.0
        j0, j1 = 0.0, 0.0
        h = (x / 2) ** 2
        for k in range(60):
            j0 += term
            j1 += term * (x / 2) / (k + 1)
            term *= -h / ((k + 1) ** 2)
        return j0, j1

    x = 2.4
    for _ in range(50):
        j0, j1 = j0_j1(x)
        step = j0 / j1  # J_0' = -J_1
        x += step
        if abs(step) < tol:
            break
    return x


def gatteschi_root_degree(m: int) -> float:
    """Asymptotic approximation of the largest zero of L_m."""
    nu2 = m * (m + 1) + 1.0 / 3.0
    b = BESSEL_J0_ZERO
    return math.cos(b / math.sqrt(nu2) * (1.0 - (b * b - 2.0) / (360.0 * nu2 * nu2)))


def gatteschi_root(d: int) -> float:
    """Approximate largest zero of L_{2d}."""
    if d < 1:
        raise ValueError("need d >= 1")
    return gatteschi_root_degree(2 * d)
