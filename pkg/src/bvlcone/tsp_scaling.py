"""Closed-form scaling-constant bounds for symmetric traveling salesman cones.

X is the set of hamiltonian cycles of K_n or K_{n,n} with the uniform measure,
and monomials in the edge variables reduce to the indicator of their support
(x_e^2 = x_e).  All quantities are exact rationals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from ._exact import binom, factorial
from .numerics import InputError

Edge = tuple[int, int]


class GraphKind(enum.Enum):
    COMPLETE = "kn"
    COMPLETE_BIPARTITE = "knn"


@dataclass(frozen=True)
class GraphFamily:
    """K_n on vertices 0..n-1, or K_{n,n} with sides 0..n-1 and n..2n-1."""

    kind: GraphKind
    n: int

    def __post_init__(self):
        if self.kind is GraphKind.COMPLETE and self.n < 3:
            raise InputError("K_n needs n >= 3")
        if self.kind is GraphKind.COMPLETE_BIPARTITE and self.n < 2:
            raise InputError("K_{n,n} needs n >= 2")

    @classmethod
    def complete(cls, n: int) -> "GraphFamily":
        return cls(GraphKind.COMPLETE, n)

    @classmethod
    def bipartite(cls, n: int) -> "GraphFamily":
        return cls(GraphKind.COMPLETE_BIPARTITE, n)

    @property
    def bipartite_graph(self) -> bool:
        return self.kind is GraphKind.COMPLETE_BIPARTITE

    @property
    def num_vertices(self) -> int:
        return 2 * self.n if self.bipartite_graph else self.n

    def edges(self) -> list[Edge]:
        if self.bipartite_graph:
            return [(a, self.n + b) for a in range(self.n) for b in range(self.n)]
        return list(combinations(range(self.n), 2))

    def cycle_count(self) -> int:
        if self.bipartite_graph:
            return factorial(self.n) * factorial(self.n - 1) // 2
        return factorial(self.n - 1) // 2

    def base_cycle(self) -> list[Edge]:
        """0-1-...-(n-1)-0, or a0-b0-a1-b1-...-b_{n-1}-a0 in the bipartite case."""
        if self.bipartite_graph:
            seq = [v for i in range(self.n) for v in (i, self.n + i)]
        else:
            seq = list(range(self.n))
        return cycle_edges(seq)

    def edge_density(self) -> Fraction:
        """Fraction of hamiltonian cycles through a fixed edge."""
        return Fraction(2, self.n) if self.bipartite_graph else Fraction(2, self.n - 1)


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def cycle_edges(seq: Sequence[int]) -> list[Edge]:
    return [norm_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]


@dataclass(frozen=True)
class PathProfile:
    """l vertex-disjoint paths of total length p, r of them of odd length."""

    l: int
    p: int
    r: int = 0

    def __post_init__(self):
        if not (0 <= self.r <= self.l <= self.p):
            raise InputError(f"inconsistent path profile {self}")
        if (self.l == 0) != (self.p == 0):
            raise InputError(f"inconsistent path profile {self}")


def classify_support(edges: Iterable[Edge]) -> PathProfile | None:
    """PathProfile of a support graph, or None unless it is a union of disjoint paths."""
    edges = {norm_edge(*e) for e in edges}
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(nb) > 2 for nb in adj.values()):
        return None
    seen: set[int] = set()
    l = r = 0
    for start in adj:
        if start in seen:
            continue
        # walk the component; it is a path iff it has fewer edges than vertices
        stack, comp = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        n_edges = sum(len(adj[x]) for x in comp) // 2
        if n_edges >= len(comp):
            return None
        l += 1
        r += n_edges % 2
    return PathProfile(l, len(edges), r)


def kn_path_integral(n: int, profile: PathProfile) -> Fraction:
    """Fraction of hamiltonian cycles of K_n containing a given disjoint-path support."""
    if n < 3:
        raise InputError("K_n needs n >= 3")
    if profile.p > n - 1:
        return Fraction(0)
    return Fraction(2**profile.l * factorial(n - profile.p - 1), factorial(n - 1))


def knn_path_integral(n: int, profile: PathProfile) -> Fraction:
    """Fraction of hamiltonian cycles of K_{n,n} containing a given disjoint-path support."""
    if n < 2:
        raise InputError("K_{n,n} needs n >= 2")
    l, p, r = profile.l, profile.p, profile.r
    rest = 2 * n - p - r
    if p > 2 * n - 1 or rest < 0 or rest % 2:
        raise InputError(f"profile {profile} is not realizable in K_{{{n},{n}}}")
    if rest == 0 and l > r:
        raise InputError(f"profile {profile} is not realizable in K_{{{n},{n}}}")
    num = 2 ** (l - r + 1) * factorial(2 * n - p - 1)
    return Fraction(num, factorial(n) * factorial(n - 1) * binom(rest, rest // 2))


def support_integral(g: GraphFamily, edges: Iterable[Edge]) -> Fraction:
    """Closed-form integral of the monomial with the given support."""
    prof = classify_support(edges)
    if prof is None:
        return Fraction(0)
    if prof.l == 0:
        return Fraction(1)
    if g.bipartite_graph:
        if 2 * g.n - prof.p - prof.r < 0:
            return Fraction(0)
        return knn_path_integral(g.n, prof)
    return kn_path_integral(g.n, prof)


# -- K_n ----------------------------------------------------------------------

@dataclass(frozen=True)
class TwoValueIntegrals:
    """Values of int x_ij s dmu for edges on and off the base cycle."""

    on_cycle: Fraction
    off_cycle: Fraction
    scale: str = "normalized"

    @property
    def ratio(self) -> Fraction:
        return self.off_cycle / self.on_cycle

    def valid(self) -> bool:
        return self.on_cycle > self.off_cycle >= 0


def _half(n: int) -> int:
    return n // 2


@lru_cache(maxsize=None)
def veomett_constants(n: int, k: int) -> TwoValueIntegrals:
    """(alpha_k, beta_k) at the scale |X| times the normalized integral."""
    if n < 4:
        raise InputError("the published constants need n >= 4")
    if not 1 <= k <= _half(n):
        raise InputError(f"k must lie in 1..{_half(n)}")
    f = factorial
    if n % 2 == 0:
        r = n // 2
        alpha = Fraction(4 * (k + 2) * r * r - 2 * (k * (k + 7) + 4) * r + 3 * k * (k + 3)) \
            * Fraction(2) ** (k - 2) * Fraction(f(r - 2) * f(2 * r - k - 2), f(k) * f(r - k))
        beta = Fraction(2) ** (k - 1) * (binom(r - 2, k - 2) + 4 * binom(r - 1, k)) * f(2 * r - k - 2)
    else:
        r = (n - 1) // 2
        alpha = Fraction(2) ** (k - 2) * (4 * (k + 2) * r * r - 2 * k * (k + 4) * r + (k - 1) * k + 4 * r) \
            * Fraction(f(r - 1) * f(2 * r - k - 1), f(k) * f(r - k))
        beta = Fraction(2) ** (k - 2) * (k * k * (2 * r - 1) - 8 * k * r * r + 6 * k * r + k + 4 * (r - 1) * r * (2 * r + 1)) \
            * Fraction(f(r - 2) * f(2 * r - k - 1), f(k) * f(r - k))
    return TwoValueIntegrals(alpha, beta, scale="|X|")


def square_multiplicity(i: int, k: int) -> int:
    """Number of ordered pairs (L, L') of k-sets with L | L' equal to a fixed i-set."""
    return binom(i, k) * binom(k, 2 * k - i)


def _weighted_ratio(pairs: list[tuple[int, TwoValueIntegrals]]) -> Fraction:
    num = sum((w * tv.off_cycle for w, tv in pairs), Fraction(0))
    den = sum((w * (tv.on_cycle - tv.off_cycle) for w, tv in pairs), Fraction(0))
    if den <= 0:
        raise ArithmeticError("two-value certificate is degenerate")
    return num / den


@dataclass
class TspBoundReport:
    graph: GraphKind
    n: int
    k: int
    improved: Fraction
    plain: Fraction
    cap: Fraction | None
    corrected: Fraction

    @property
    def bound(self) -> Fraction:
        return self.improved


def kn_improved(n: int, k: int, weights=binom) -> Fraction:
    top = min(_half(n), 2 * k)
    pairs = [(weights(i, k), veomett_constants(n, i)) for i in range(k, top + 1)]
    return 1 + Fraction(n - 1, 2) * _weighted_ratio(pairs)


def kn_veomett(n: int, k: int) -> Fraction:
    return 1 + Fraction(n - 1, 2) * _weighted_ratio([(1, veomett_constants(n, k))])


def kn_cap(n: int, k: int) -> Fraction:
    return Fraction(n, k) + Fraction(10, n)


def kn_k1_closed_form(n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(2 * n, 3) + Fraction(4 * n, 3 * (3 * n * n - 15 * n + 16))
    return Fraction(2 * n, 3) - Fraction(2, 5 * (n - 2)) + Fraction(154, 45 * (3 * n - 11)) + Fraction(1, 9)


def kn_bound(n: int, k: int) -> TspBoundReport:
    """Bounds for K_n: combined certificate, single Veomett certificate, and the n/k + 10/n cap.

    ``corrected`` weights s_i by the true multiplicity with which s_i occurs in
    the squared certificate (see :func:`square_multiplicity`).
    """
    return TspBoundReport(GraphKind.COMPLETE, n, k, kn_improved(n, k), kn_veomett(n, k),
                          kn_cap(n, k), kn_improved(n, k, square_multiplicity))


# -- K_{n,n} ------------------------------------------------------------------

def _term(coef: int, fact_arg: int, top: int) -> Fraction:
    if coef == 0:
        return Fraction(0)
    return Fraction(coef * factorial(fact_arg), binom(2 * top, top))


@lru_cache(maxsize=None)
def knn_constants(n: int, k: int) -> TwoValueIntegrals:
    """(gamma_k, eta_k) at the scale |X| times the normalized integral."""
    if n < 3:
        # K_{2,2} is its own unique hamiltonian cycle, so no edge is off-cycle
        raise InputError("the bipartite constants need n >= 3")
    if not 1 <= k <= n:
        raise InputError(f"k must lie in 1..{n}")
    shared = (_term(binom(n - 2, k), 2 * n - k - 2, n - k - 1)
              + _term(4 * binom(n - 2, k - 1), 2 * n - k - 2, n - k)
              + _term(binom(n - 2, k - 2), 2 * n - k - 2, n - k))
    gamma = (_term(binom(n - 1, k - 1), 2 * n - k - 1, n - k)
             + _term(binom(n - 1, k), 2 * n - k - 2, n - k - 1)
             + shared)
    eta = 2 * shared
    return TwoValueIntegrals(gamma, eta, scale="|X|")


def knn_cap(n: int, k: int) -> Fraction | None:
    den = k * (2 * n - k - 3)
    if den <= 0:
        return None
    return Fraction(2 * n, k) + Fraction(2 * (k + 1), den)


def knn_improved(n: int, k: int, weights=binom) -> Fraction:
    pairs = [(weights(i, k), knn_constants(n, i)) for i in range(k, min(n, 2 * k) + 1)]
    return 1 + Fraction(n, 2) * _weighted_ratio(pairs)


def knn_plain(n: int, k: int) -> Fraction:
    return 1 + Fraction(n, 2) * _weighted_ratio([(1, knn_constants(n, k))])


def knn_bound(n: int, k: int) -> TspBoundReport:
    return TspBoundReport(GraphKind.COMPLETE_BIPARTITE, n, k, knn_improved(n, k), knn_plain(n, k),
                          knn_cap(n, k), knn_improved(n, k, square_multiplicity))


def improvement_ratio(n: int, k: int) -> tuple[float, float, bool]:
    """(improved / Veomett, 1 + (1 - 2k/n) log((k+2)/(k+3)), lhs <= rhs)."""
    lhs = float(kn_improved(n, k) / kn_veomett(n, k))
    rhs = 1.0 + (1.0 - 2.0 * k / n) * math.log((k + 2) / (k + 3))
    return lhs, rhs, lhs <= rhs + 1e-12
