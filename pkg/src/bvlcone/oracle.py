"""Brute-force ground truth for the closed-form formulas.

Hamiltonian cycles are enumerated explicitly and stored as edge bitmasks, so a
monomial integral is a containment count.  Sphere moments are cross-checked by
iterated one-dimensional Beta integrals and by Gauss-Legendre quadrature in
spherical coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._exact import binom, gamma_ratio
from ._kernels import count_supersets
from .numerics import InputError
from .polys import HomogPoly
from .tsp_scaling import Edge, GraphFamily, TwoValueIntegrals, cycle_edges, norm_edge, square_multiplicity

MAX_KN = 10
MAX_KNN = 5


@dataclass(frozen=True, eq=False)
class CycleSet:
    graph: GraphFamily
    edges: tuple[Edge, ...]  # bit i of a mask is edges[i]
    masks: np.ndarray  # uint64, one per cycle

    @property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def __len__(self) -> int:
        return len(self.masks)

    def mask_of(self, edges: Iterable[Edge]) -> int:
        idx = self.edge_index
        m = 0
        for e in edges:
            e = norm_edge(*e)
            if e not in idx:
                raise InputError(f"{e} is not an edge of the graph")
            m |= 1 << idx[e]
        return m

    def cycles(self) -> list[frozenset[Edge]]:
        return [frozenset(e for i, e in enumerate(self.edges) if (int(m) >> i) & 1) for m in self.masks]


def _kn_sequences(n: int):
    # fix vertex 0 and keep one of each pair of reflections
    for rest in permutations(range(1, n)):
        if rest[0] < rest[-1]:
            yield (0,) + rest


def _knn_sequences(n: int):
    # a0, b., a., b., ... with a0 first; reflection swaps the first and last b
    for bs in permutations(range(n, 2 * n)):
        if bs[0] > bs[-1]:
            continue
        for as_ in permutations(range(1, n)):
            seq = [0]
            for i in range(n):
                seq.append(bs[i])
                if i < n - 1:
                    seq.append(as_[i])
            yield tuple(seq)


@lru_cache(maxsize=None)
def enumerate_cycles(g: GraphFamily) -> CycleSet:
    """Every hamiltonian cycle exactly once, in lexicographic order of its vertex sequence."""
    if g.bipartite_graph and g.n > MAX_KNN:
        raise InputError(f"refusing to enumerate K_{{{g.n},{g.n}}} (limit n <= {MAX_KNN})")
    if not g.bipartite_graph and g.n > MAX_KN:
        raise InputError(f"refusing to enumerate K_{g.n} (limit n <= {MAX_KN})")
    edges = tuple(sorted(g.edges()))
    idx = {e: i for i, e in enumerate(edges)}
    seqs = _knn_sequences(g.n) if g.bipartite_graph else _kn_sequences(g.n)
    masks = []
    for seq in seqs:
        m = 0
        for e in cycle_edges(seq):
            m |= 1 << idx[e]
        masks.append(m)
    arr = np.array(masks, dtype=np.uint64)
    if len(arr) != g.cycle_count():
        raise AssertionError("cycle enumeration produced the wrong count")
    return CycleSet(g, edges, arr)


def _support(alpha) -> list[Edge]:
    if isinstance(alpha, Mapping):
        return [norm_edge(*e) for e, a in alpha.items() if a]
    return [norm_edge(*e) for e in alpha]


def monomial_cycle_integral(cs: CycleSet, alpha) -> Fraction:
    """Fraction of cycles containing supp(alpha).

    ``alpha`` is either a mapping edge -> exponent or an iterable of edges.
    """
    q = np.array([cs.mask_of(_support(alpha))], dtype=np.uint64)
    return Fraction(int(count_supersets(cs.masks, q)[0]), len(cs))


def support_integrals(cs: CycleSet, supports: Sequence[Iterable[Edge]]) -> list[Fraction]:
    q = np.array([cs.mask_of(s) for s in supports], dtype=np.uint64)
    counts = count_supersets(cs.masks, q)
    return [Fraction(int(c), len(cs)) for c in counts]


class SigmaCheckError(ValueError):
    def __init__(self, message: str, values: dict[Edge, Fraction]):
        super().__init__(message)
        self.values = values


def edge_integrals(cs: CycleSet, s: Sequence[tuple[object, Iterable[Edge]]]) -> dict[Edge, Fraction]:
    """int x_ij s dmu for every edge ij, with s given as (coefficient, support) terms."""
    terms = [(Fraction(c), cs.mask_of(sup)) for c, sup in s]
    den = math.lcm(*(c.denominator for c, _ in terms)) if terms else 1
    # integer value of den * s on every cycle
    value = np.zeros(len(cs), dtype=object)
    for c, m in terms:
        hit = (cs.masks & np.uint64(m)) == np.uint64(m)
        value[hit] += int(c * den)
    out = {}
    for i, e in enumerate(cs.edges):
        on = ((cs.masks >> np.uint64(i)) & np.uint64(1)).astype(bool)
        out[e] = Fraction(int(value[on].sum()) if on.any() else 0, den * len(cs))
    return out


def sigma_membership_check(cs: CycleSet, s: Sequence[tuple[object, Iterable[Edge]]],
                           u0: Iterable[Edge] | None = None) -> TwoValueIntegrals:
    """Check that int x_ij s dmu takes one value on u0's edges and a smaller one off it."""
    u0 = {norm_edge(*e) for e in (u0 if u0 is not None else cs.graph.base_cycle())}
    vals = edge_integrals(cs, s)
    on = {vals[e] for e in vals if e in u0}
    off = {vals[e] for e in vals if e not in u0}
    if len(on) != 1 or len(off) != 1:
        bad_on = sorted(e for e in vals if e in u0 and vals[e] != min(on))
        bad_off = sorted(e for e in vals if e not in u0 and vals[e] != min(off))
        raise SigmaCheckError(f"integrals are not two-valued (edges {bad_on + bad_off})", vals)
    tv = TwoValueIntegrals(on.pop(), off.pop())
    if not tv.on_cycle > tv.off_cycle:
        raise SigmaCheckError("on-cycle value does not exceed off-cycle value", vals)
    return tv


# -- certificate polynomials ---------------------------------------------------

Poly = dict[frozenset, Fraction]  # support -> coefficient, with x_e^2 = x_e


def cycle_matchings(g: GraphFamily) -> list[tuple[Edge, ...]]:
    """Maximum matchings made of base-cycle edges (two, or n for odd n)."""
    u0 = g.base_cycle()
    if g.bipartite_graph:
        return [tuple(u0[0::2]), tuple(u0[1::2])]
    size = g.n // 2
    out = []
    for sub in combinations(u0, size):
        verts = [v for e in sub for v in e]
        if len(set(verts)) == len(verts):
            out.append(sub)
    return out


def matching_polynomial(g: GraphFamily, k: int) -> Poly:
    """sum over the base matchings G of sum_{L in G, |L| = k} x^L."""
    out: Poly = {}
    for gam in cycle_matchings(g):
        for sub in combinations(gam, k):
            key = frozenset(sub)
            out[key] = out.get(key, Fraction(0)) + 1
    return out


def squared_matching_polynomial(g: GraphFamily, k: int) -> Poly:
    """sum over G of (sum_{L in G, |L| = k} x^L)^2, reduced with x_e^2 = x_e."""
    out: Poly = {}
    for gam in cycle_matchings(g):
        subs = [frozenset(s) for s in combinations(gam, k)]
        for a in subs:
            for b in subs:
                key = a | b
                out[key] = out.get(key, Fraction(0)) + 1
    return out


def combine(polys: Iterable[tuple[object, Poly]]) -> Poly:
    out: Poly = {}
    for w, p in polys:
        for key, c in p.items():
            out[key] = out.get(key, Fraction(0)) + Fraction(w) * c
    return {k: v for k, v in out.items() if v}


def weighted_matching_sum(g: GraphFamily, k: int, weights=binom) -> Poly:
    top = min(g.n // 2 if not g.bipartite_graph else g.n, 2 * k)
    return combine((weights(i, k), matching_polynomial(g, i)) for i in range(k, top + 1))


def true_square_weights(i: int, k: int) -> int:
    return square_multiplicity(i, k)


def as_terms(p: Poly) -> list[tuple[Fraction, tuple[Edge, ...]]]:
    return [(c, tuple(sorted(key))) for key, c in sorted(p.items(), key=lambda kv: sorted(kv[0]))]


# -- sphere moments --------------------------------------------------------------

def beta_moment_integral(alpha: Sequence[int]) -> Fraction:
    """Normalized sphere integral of x^alpha by peeling off one coordinate at a time.

    Conditional on x_1 = t the rest is uniform on a sphere of radius sqrt(1 - t^2),
    and x_1 has density proportional to (1 - t^2)^{(n-3)/2}; each step is a ratio
    of Beta functions.
    """
    alpha = tuple(alpha)
    n = len(alpha)
    if n == 1:
        return Fraction(1) if alpha[0] % 2 == 0 else Fraction(0)
    a, rest = alpha[0], alpha[1:]
    b = sum(rest)
    if a % 2 or b % 2:
        return Fraction(0)
    # int t^a (1 - t^2)^{b/2} w_n(t) dt = B((a+1)/2, (b+n-1)/2) / B(1/2, (n-1)/2)
    step = gamma_ratio([a + 1, b + n - 1, n], [a + b + n, 1, n - 1])
    return step * beta_moment_integral(rest)


@lru_cache(maxsize=None)
def _gauss(nodes: int, lo: float, hi: float):
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _angular_monomial(alpha: Sequence[int], nodes: int) -> float:
    n = len(alpha)
    total = 1.0
    tail = sum(alpha)
    for i in range(n - 2):
        tail -= alpha[i]
        th, w = _gauss(nodes, 0.0, np.pi)
        total *= float(np.sum(w * np.cos(th) ** alpha[i] * np.sin(th) ** (tail + n - 2 - i)))
    ph, w = _gauss(nodes, 0.0, 2 * np.pi)
    total *= float(np.sum(w * np.cos(ph) ** alpha[n - 2] * np.sin(ph) ** alpha[n - 1]))
    return total


def sphere_quadrature_integral(p: HomogPoly) -> float:
    """Normalized sphere integral by Gauss-Legendre quadrature in spherical angles."""
    n = p.n
    if n < 2 or n > 6:
        raise InputError("quadrature supports 2 <= n <= 6")
    if p.degree > 12:
        raise InputError("quadrature supports degree <= 12")
    nodes = 2 * p.degree + 24
    area = _angular_monomial((0,) * n, nodes)
    return sum(float(c) * _angular_monomial(a, nodes) for a, c in p.terms.items()) / area
