"""Upper bounds on the scaling constants for cones of nonnegative forms on the sphere.

All programs below optimize over invariant functionals
lambda = sum_j a_j Z_{2j} s^{d-j} with a_0 = 1, whose restriction to the sphere is
the univariate profile sum_j a_j h_{2j} P_{2j,n}(u_1).  The quantity bounded is
1 - min over admissible lambda of lambda(e_1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .harmonics import (
    harmonic_dim,
    largest_legendre_root,
    gatteschi_root,
    legendre,
    weighted_integral,
    zonal_profile,
)
from .numerics import InputError, SdpProblem, SdpStatus, SymMatrix, min_eigenvalue, solve_sdp
from .polys import UniPoly
from .sphere_moments import basis_multiindices, monomial_sphere_integral

FULL_SDP_MAX_SIZE = 500


class Method(enum.Enum):
    REDUCED = "reduced"
    FULL = "full"
    LEGENDRE_FIXED = "legendre-fixed"
    LEGENDRE_OPT = "legendre-opt"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class ZonalCombo:
    """Coefficients a_0..a_d of lambda = sum_j a_j Z_{2j} s^{d-j}."""

    n: int
    d: int
    a: tuple[float, ...]

    def __post_init__(self):
        if len(self.a) != self.d + 1:
            raise ValueError("need d + 1 coefficients")

    @property
    def value_at_pole(self) -> float:
        return sum(aj * harmonic_dim(self.n, 2 * j) for j, aj in enumerate(self.a))

    @property
    def bound(self) -> float:
        return 1.0 - self.value_at_pole

    def profile(self, classical: bool = False) -> UniPoly:
        out = UniPoly()
        for j, aj in enumerate(self.a):
            out = out + _profile(self.n, 2 * j, classical) * (Fraction(aj) * harmonic_dim(self.n, 2 * j))
        return out


@dataclass
class BoundReport:
    method: Method
    params: tuple[int, ...]
    bound: float
    exact: Fraction | None = None
    certificate: ZonalCombo | UniPoly | None = None
    status: SdpStatus | None = None
    extra: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status in (None, SdpStatus.OPTIMAL)

    @property
    def status_label(self) -> str:
        if self.status is None:
            return "exact"
        return self.status.value


def _profile(n: int, m: int, classical: bool) -> UniPoly:
    return legendre(m) if classical else zonal_profile(n, m)


def _check_ndk(n: int, d: int, k: int, min_n: int = 2):
    if n < min_n:
        raise InputError(f"need n >= {min_n}")
    if d < 1 or k < d:
        raise InputError("need k >= d >= 1")


# -- symmetry-reduced program ---------------------------------------------

@lru_cache(maxsize=None)
def _reduced_data(n: int, d: int, k: int, classical: bool):
    """Exact matrices G_j[i, i'] = h_{2j} int P_{2j} q_i q_i' w_n with q_i = P_{2i,n}."""
    basis = [zonal_profile(n, 2 * i) for i in range(k + 1)]
    mats = []
    for j in range(d + 1):
        lam = _profile(n, 2 * j, classical) * harmonic_dim(n, 2 * j)
        g = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
        for i in range(k + 1):
            li = lam * basis[i]
            for i2 in range(i + 1):
                g[i][i2] = g[i2][i] = weighted_integral(n, li * basis[i2])
        mats.append(g)
    norms = [weighted_integral(n, q * q) for q in basis]
    return mats, norms


def _scaled(mat, norms) -> np.ndarray:
    s = np.array([1.0 / math.sqrt(float(v)) for v in norms])
    return np.array([[float(v) for v in row] for row in mat]) * s[:, None] * s[None, :]


def _lmi_bound(mats_float: list[np.ndarray], d: int, tol: float):
    """min <F_0, X> s.t. <F_j, X> = h_2j, which equals 1 - min lambda(e_1)."""
    # the right-hand sides are folded into F_j (F_j already carries h_2j), so
    # every constraint reads <G_j, X> = 1 after dividing by h_2j
    cons = tuple((SymMatrix(mats_float[j]), 1.0) for j in range(1, d + 1))
    return solve_sdp(SdpProblem(SymMatrix(mats_float[0]), cons), tol=tol)


def invariant_sdp_bound(n: int, d: int, k: int, classical_legendre: bool = False,
                        tol: float = 1e-8) -> BoundReport:
    """Bound from the program restricted to rotation-invariant test functions q.

    The level-k constraint asks int lambda q^2 dmu >= 0 only for q in the span of
    u_1^{2i}, i <= k.
    """
    _check_ndk(n, d, k, min_n=3)
    mats, norms = _reduced_data(n, d, k, classical_legendre)
    fl = []
    for j, g in enumerate(mats):
        h = harmonic_dim(n, 2 * j)
        fl.append(_scaled(g, norms) / (h if j else 1))
    sol = _lmi_bound(fl, d, tol)
    # dual multipliers give a_j = -y_j / h_2j (G_j was divided by h_2j)
    a = (1.0,) + tuple(-float(y) / harmonic_dim(n, 2 * j) for j, y in enumerate(sol.dual, start=1))
    combo = ZonalCombo(n, d, a)
    return BoundReport(Method.REDUCED, (n, d, k), float(sol.value), certificate=combo,
                       status=sol.status,
                       extra={"dual_bound": combo.bound, "iterations": sol.iterations,
                              "classical_legendre": classical_legendre})


def reduced_constraint_matrix(combo: ZonalCombo, k: int, classical_legendre: bool = False) -> list[list[Fraction]]:
    """Exact sum_j a_j G_j for the rational rounding of the combo's coefficients."""
    mats, _ = _reduced_data(combo.n, combo.d, k, classical_legendre)
    size = k + 1
    out = [[Fraction(0)] * size for _ in range(size)]
    for aj, g in zip(combo.a, mats):
        aj = Fraction(aj)
        for i in range(size):
            for i2 in range(size):
                out[i][i2] += aj * g[i][i2]
    return out


def certificate_min_eigenvalue(combo: ZonalCombo, k: int, classical_legendre: bool = False) -> float:
    """Smallest eigenvalue of the combo's constraint matrix in the orthonormal basis."""
    _, norms = _reduced_data(combo.n, combo.d, k, classical_legendre)
    return min_eigenvalue(_scaled(reduced_constraint_matrix(combo, k, classical_legendre), norms))


# -- full invariant-functional program ------------------------------------

def full_sdp_size(n: int, k: int) -> int:
    return math.comb(n + 2 * k - 1, n - 1)


def _full_data(n: int, d: int, k: int):
    basis = basis_multiindices(n, 2 * k)
    size = len(basis)
    mats = []
    for j in range(d + 1):
        prof = zonal_profile(n, 2 * j)
        cache: dict[tuple[int, ...], Fraction] = {}
        b = np.zeros((size, size))
        for r, b1 in enumerate(basis):
            for c in range(r + 1):
                key = tuple(x + y for x, y in zip(b1, basis[c]))
                v = cache.get(key)
                if v is None:
                    v = Fraction(0)
                    for e, coef in enumerate(prof.coeffs):
                        if coef:
                            v += coef * monomial_sphere_integral((key[0] + e,) + key[1:])
                    cache[key] = v
                b[r, c] = b[c, r] = float(v)
        mats.append(b)
    return mats


def full_sdp_bound(n: int, d: int, k: int, tol: float = 1e-8) -> BoundReport:
    """Bound with an invariant functional but all degree-2k forms q as test functions."""
    _check_ndk(n, d, k)
    size = full_sdp_size(n, k)
    if size > FULL_SDP_MAX_SIZE:
        raise InputError(f"full program needs a {size}x{size} matrix (limit {FULL_SDP_MAX_SIZE})")
    mats = _full_data(n, d, k)
    # congruence by the Cholesky factor of the Gram matrix improves conditioning
    chol = np.linalg.cholesky(mats[0])
    inv = np.linalg.inv(chol)
    fl = [np.eye(size)]
    for b in mats[1:]:
        m = inv @ b @ inv.T
        fl.append(0.5 * (m + m.T))
    sol = _lmi_bound(fl, d, tol)
    a = (1.0,) + tuple(-float(y) / harmonic_dim(n, 2 * j) for j, y in enumerate(sol.dual, start=1))
    combo = ZonalCombo(n, d, a)
    return BoundReport(Method.FULL, (n, d, k), float(sol.value), certificate=combo, status=sol.status,
                       extra={"dual_bound": combo.bound, "iterations": sol.iterations, "size": size})


# -- univariate programs ----------------------------------------------------

def base_profile(n: int, d: int, classical_legendre: bool = False) -> UniPoly:
    """sum_{j<=d} h_{2j} P_{2j}: the profile of the zonal partial sum."""
    out = UniPoly()
    for j in range(d + 1):
        out = out + _profile(n, 2 * j, classical_legendre) * harmonic_dim(n, 2 * j)
    return out


def legendre_bound_fixed(n: int, d: int, k: int, classical_legendre: bool = False) -> BoundReport:
    """1 - min_{[-1,1]} sum_{j<=d} h_{2j} P_{2j}; independent of k."""
    _check_ndk(n, d, k)
    q = base_profile(n, d, classical_legendre)
    argmin, low = q.minimize(-1, 1)
    return BoundReport(Method.LEGENDRE_FIXED, (n, d, k), float(1 - low), exact=1 - low, certificate=q,
                       extra={"argmin": argmin, "classical_legendre": classical_legendre})


def _coeff_functional(n: int, m: int, f: UniPoly, profile_n: int) -> Fraction:
    p = zonal_profile(profile_n, m)
    return weighted_integral(profile_n, f * p) / weighted_integral(profile_n, p * p)


def legendre_bound_optimized(n: int, d: int, k: int, classical_legendre: bool = False,
                             tol: float = 1e-8) -> BoundReport:
    """1 - sup_b min_{[-1,1]} q_b with q_b = sum_{j<=d} h_{2j} P_{2j} + sum_{d<j<=k} b_j P_{2j}.

    Solved through the certificate q_b - t = sigma_0 + (1 - x^2) sigma_1 with
    sigma_0, sigma_1 sums of squares, then re-evaluated exactly at the
    recovered b.
    """
    _check_ndk(n, d, k)
    if k <= d:
        raise InputError("the optimized bound needs k > d")
    pn = 3 if classical_legendre else n
    v0 = [zonal_profile(pn, i) for i in range(k + 1)]
    v1 = [zonal_profile(pn, i) for i in range(k)]
    s0 = np.array([1.0 / math.sqrt(float(weighted_integral(pn, p * p))) for p in v0])
    s1 = np.array([1.0 / math.sqrt(float(weighted_integral(pn, p * p))) for p in v1])
    one_minus = UniPoly([1, 0, -1])
    size = 2 * k + 1

    def block_matrix(m: int) -> np.ndarray:
        out = np.zeros((size, size))
        for a in range(k + 1):
            for b in range(a + 1):
                v = float(_coeff_functional(pn, m, v0[a] * v0[b], pn)) * s0[a] * s0[b]
                out[a, b] = out[b, a] = v
        for a in range(k):
            for b in range(a + 1):
                v = float(_coeff_functional(pn, m, one_minus * v1[a] * v1[b], pn)) * s1[a] * s1[b]
                out[k + 1 + a, k + 1 + b] = out[k + 1 + b, k + 1 + a] = v
        return out

    # coefficients of the fixed part in the P_m basis: h_m for even m <= 2d
    cons = []
    for m in range(1, 2 * k + 1):
        if m % 2 == 0 and m > 2 * d:
            continue
        target = float(harmonic_dim(n, m)) if m % 2 == 0 else 0.0
        cons.append((SymMatrix(block_matrix(m)), target))
    sol = solve_sdp(SdpProblem(SymMatrix(block_matrix(0)), tuple(cons)), tol=tol)

    x = sol.primal.array
    b = []
    for j in range(d + 1, k + 1):
        b.append(float(np.sum(block_matrix(2 * j) * x)))
    q = base_profile(n, d, classical_legendre)
    for j, bj in zip(range(d + 1, k + 1), b):
        q = q + _profile(n, 2 * j, classical_legendre) * Fraction(bj)
    argmin, low = q.minimize(-1, 1)
    return BoundReport(Method.LEGENDRE_OPT, (n, d, k), float(1 - low), exact=1 - low, certificate=q,
                       status=sol.status,
                       extra={"sdp_value": float(sol.value), "b": tuple(b), "argmin": argmin,
                              "classical_legendre": classical_legendre})


def closed_form_bound(n: int, d: int) -> BoundReport:
    """1 + (1 - g^2)^{-1/4} sum_{j<=d} h_{2j} sqrt(4 / (pi (4j + 1))), g the top zero of L_{2d}.

    Rigorous only for n = 3; other n are reported with ``extra["heuristic"]``.
    """
    if d < 1:
        raise InputError("need d >= 1")
    if n < 2:
        raise InputError("need n >= 2")
    total = sum(harmonic_dim(n, 2 * j) * math.sqrt(4.0 / (math.pi * (4 * j + 1))) for j in range(d + 1))

    def value(g: float) -> float:
        return 1.0 + total / (1.0 - g * g) ** 0.25

    root = largest_legendre_root(2 * d)
    approx = gatteschi_root(d)
    return BoundReport(Method.CLOSED_FORM, (n, d, d), value(root),
                       extra={"root": root, "gatteschi_root": approx, "gatteschi_bound": value(approx),
                              "heuristic": n != 3})


def zonal_partial_sum_profile(n: int, m: int, samples: int, classical_legendre: bool = False) -> dict:
    """Samples of sum_{j<=m} h_{2j} P_{2j} on a uniform grid, with its exact minimum.

    Also returns the largest zero of the derivative so the location of the
    minimum can be compared against it.
    """
    if n < 3 or m < 0 or samples < 2:
        raise InputError("need n >= 3, m >= 0, samples >= 2")
    q = base_profile(n, m, classical_legendre)
    ts = np.linspace(-1.0, 1.0, samples)
    vals = q.eval_float(ts)
    argmin, low = q.minimize(-1, 1)
    dq = q.derivative()
    crit = dq.real_roots(-1, 1) if not dq.is_zero() else []
    return {
        "t": ts,
        "values": vals,
        "argmin": argmin,
        "min": low,
        "largest_critical_point": max(crit) if crit else None,
        "profile": q,
    }
