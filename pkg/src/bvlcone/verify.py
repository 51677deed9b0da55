"""Cross-check suites run by ``bvlcone verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from . import __version__
from .harmonics import (
    harmonic_decompose,
    legendre,
    reproduces_at_pole,
    weighted_inner,
    zonal_profile,
)
from .numerics import SdpProblem, SymMatrix, min_eigenvalue, solve_sdp
from .oracle import (
    as_terms,
    beta_moment_integral,
    enumerate_cycles,
    matching_polynomial,
    sigma_membership_check,
    sphere_quadrature_integral,
    support_integrals,
)
from .poly_scaling import certificate_min_eigenvalue, full_sdp_bound, invariant_sdp_bound
from .polys import HomogPoly
from .sphere_moments import basis_multiindices, monomial_sphere_integral
from .tsp_scaling import (
    GraphFamily,
    PathProfile,
    classify_support,
    kn_path_integral,
    knn_constants,
    knn_path_integral,
    veomett_constants,
)

SUITES = ("moments", "tsp", "harmonics", "sdp")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


# -- moments -------------------------------------------------------------------

def check_moments() -> list[Check]:
    out = []
    mismatches = []
    count = 0
    for n in range(2, 6):
        for deg in range(9):
            for a in basis_multiindices(n, deg):
                count += 1
                if monomial_sphere_integral(a) != beta_moment_integral(a):
                    mismatches.append(a)
    out.append(Check("closed form equals iterated Beta moments (deg <= 8, n <= 5)", not mismatches,
                     f"{count} monomials, mismatches {mismatches[:5]}"))
    worst = 0.0
    for n in range(2, 6):
        for deg in range(9):
            for a in basis_multiindices(n, deg):
                exact = float(monomial_sphere_integral(a))
                approx = sphere_quadrature_integral(HomogPoly.monomial(a))
                err = abs(approx - exact) / abs(exact) if exact else abs(approx)
                worst = max(worst, err)
    out.append(Check("quadrature agrees with closed form to 1e-9 (deg <= 8, n <= 5)", worst <= 1e-9,
                     f"max error {worst:.3e}"))
    bad = [n for n in range(2, 12)
           if monomial_sphere_integral((2,) + (0,) * (n - 1)) != Fraction(1, n)]
    out.append(Check("int x_1^2 = 1/n", not bad, f"failures at n = {bad}"))
    bad = [n for n in range(2, 12) if monomial_sphere_integral((0,) * n) != 1]
    out.append(Check("measure has total mass one", not bad, f"failures at n = {bad}"))
    return out


# -- tsp -----------------------------------------------------------------------

def _formula(g: GraphFamily, prof: PathProfile) -> Fraction:
    if prof.l == 0:
        return Fraction(1)
    if g.bipartite_graph:
        return knn_path_integral(g.n, prof)
    return kn_path_integral(g.n, prof)


def path_formula_mismatches(g: GraphFamily, max_edges: int = 4) -> tuple[int, list]:
    """Compare the path formula with enumeration on every support of <= max_edges edges."""
    cs = enumerate_cycles(g)
    supports = [s for m in range(max_edges + 1) for s in combinations(cs.edges, m)]
    brute = support_integrals(cs, supports)
    bad = []
    checked = 0
    for sup, val in zip(supports, brute):
        prof = classify_support(sup)
        if prof is None:
            if val != 0:
                bad.append((sup, "non-path support with nonzero integral"))
            continue
        checked += 1
        if _formula(g, prof) != val:
            bad.append((sup, prof))
    return checked, bad


def check_tsp() -> list[Check]:
    out = []
    for g in [GraphFamily.complete(n) for n in (5, 6, 7)] + [GraphFamily.bipartite(n) for n in (3, 4)]:
        checked, bad = path_formula_mismatches(g)
        name = f"K_{g.n}" if not g.bipartite_graph else f"K_{g.n},{g.n}"
        out.append(Check(f"path formula equals enumeration on {name}", not bad,
                         f"{checked} path supports checked, {len(bad)} mismatches"))
    for n in (6, 7):
        cs = enumerate_cycles(GraphFamily.complete(n))
        for k in (1, 2):
            try:
                tv = sigma_membership_check(cs, as_terms(matching_polynomial(cs.graph, k)))
                vc = veomett_constants(n, k)
                ok = tv.ratio == vc.ratio
                detail = f"two values {tv.on_cycle}, {tv.off_cycle}; ratio {tv.ratio} vs {vc.ratio}"
            except ValueError as exc:
                ok, detail = False, str(exc)
            out.append(Check(f"Veomett constants n={n} k={k}", ok, detail))
    for n in (3, 4):
        cs = enumerate_cycles(GraphFamily.bipartite(n))
        for k in range(1, n + 1):
            tv = sigma_membership_check(cs, as_terms(matching_polynomial(cs.graph, k)))
            kc = knn_constants(n, k)
            ok = tv.on_cycle * len(cs) == kc.on_cycle and tv.off_cycle * len(cs) == kc.off_cycle
            out.append(Check(f"bipartite constants n={n} k={k}", ok,
                             f"enumerated {tv.on_cycle * len(cs)}, {tv.off_cycle * len(cs)}; "
                             f"formula {kc.on_cycle}, {kc.off_cycle}"))
    bad = [n for n in range(3, 30) if kn_path_integral(n, PathProfile(1, 1)) != Fraction(2, n - 1)]
    bad += [-n for n in range(2, 30) if knn_path_integral(n, PathProfile(1, 1, 1)) != Fraction(2, n)]
    out.append(Check("single-edge integrals are 2/(n-1) and 2/n", not bad, f"failures {bad}"))
    return out


# -- harmonics -----------------------------------------------------------------

def check_harmonics() -> list[Check]:
    out = []
    bad = []
    for n in range(2, 7):
        profs = [zonal_profile(n, m) for m in range(13)]
        for a in range(13):
            for b in range(a):
                if weighted_inner(n, profs[a], profs[b]) != 0:
                    bad.append((n, a, b))
        bad += [(n, m, "P(1)") for m in range(13) if profs[m](Fraction(1)) != 1]
    out.append(Check("zonal profiles orthogonal and normalized (m <= 12, n <= 6)", not bad, f"failures {bad[:5]}"))
    bad = []
    for n in range(2, 5):
        for m in range(7):
            for a in basis_multiindices(n, m):
                p = harmonic_decompose(HomogPoly.monomial(a)).components[0]
                if not p.is_zero() and not reproduces_at_pole(p):
                    bad.append((n, a))
    out.append(Check("reproducing property of zonal harmonics (n <= 4, m <= 6)", not bad, f"failures {bad[:5]}"))
    bad = []
    for n in range(2, 5):
        for deg in range(7):
            for a in basis_multiindices(n, deg):
                if not harmonic_decompose(HomogPoly.monomial(a)).is_exact():
                    bad.append(a)
    out.append(Check("harmonic decomposition round trip (deg <= 6, n <= 4)", not bad, f"failures {bad[:5]}"))
    bad = [m for m in range(21) if legendre(m) != zonal_profile(3, m)]
    out.append(Check("Legendre equals the n = 3 zonal profile (m <= 20)", not bad, f"failures {bad}"))
    differs = {n: [m for m in range(9) if legendre(m) != zonal_profile(n, m)] for n in (4, 5, 6)}
    out.append(Check("classical Legendre differs from the zonal profile for n != 3, m >= 2",
                     all(v == list(range(2, 9)) for v in differs.values()), f"differing m: {differs}"))
    return out


# -- sdp -----------------------------------------------------------------------

def check_sdp() -> list[Check]:
    out = []
    sol = solve_sdp(SdpProblem.from_arrays(np.diag([1.0, 2.0]), [np.eye(2)], [1.0]))
    out.append(Check("min <diag(1,2), X> with tr X = 1", sol.optimal and abs(sol.value - 1) < 1e-7,
                     f"{sol.status.value} {sol.value:.10f}"))
    sol = solve_sdp(SdpProblem.from_arrays(np.array([[0.0, 1.0], [1.0, 0.0]]), [np.eye(2)], [1.0]))
    out.append(Check("min <[[0,1],[1,0]], X> with tr X = 1", sol.optimal and abs(sol.value + 1) < 1e-7,
                     f"{sol.status.value} {sol.value:.10f}"))
    rng = np.random.default_rng(7)
    a = rng.standard_normal((12, 12))
    c = a + a.T
    sol = solve_sdp(SdpProblem.from_arrays(c, [np.eye(12)], [1.0]))
    lam = min_eigenvalue(SymMatrix(c))
    out.append(Check("min-eigenvalue program matches the eigensolver", abs(sol.value - lam) <= 1e-7,
                     f"{sol.value:.12f} vs {lam:.12f}"))
    rows = []
    ok = True
    for ndk in ((3, 1, 1), (3, 2, 2), (3, 3, 3)):
        full = full_sdp_bound(*ndk)
        red = invariant_sdp_bound(*ndk)
        ok &= full.bound <= red.bound + 1e-6 and full.verified and red.verified
        rows.append(f"{ndk}: full {full.bound:.6f} reduced {red.bound:.6f}")
    out.append(Check("full program never exceeds the reduced one", ok, "; ".join(rows)))
    worst = min(certificate_min_eigenvalue(invariant_sdp_bound(3, 3, k).certificate, k) for k in range(3, 9))
    out.append(Check("reduced certificates re-verify in exact arithmetic", worst >= -1e-6,
                     f"smallest eigenvalue {worst:.3e}"))
    return out


CHECKS: dict[str, Callable[[], list[Check]]] = {
    "moments": check_moments,
    "tsp": check_tsp,
    "harmonics": check_harmonics,
    "sdp": check_sdp,
}


def run_suite(suite: str) -> dict:
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        checks.extend(CHECKS[name]())
    return {"suite": suite, "version": __version__, "checks": [c.as_dict() for c in checks]}
