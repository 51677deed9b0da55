from fractions import Fraction as F

import pytest

from bvlcone.numerics import InputError
from bvlcone.oracle import (
    SigmaCheckError,
    as_terms,
    beta_moment_integral,
    cycle_matchings,
    enumerate_cycles,
    matching_polynomial,
    monomial_cycle_integral,
    sigma_membership_check,
    sphere_quadrature_integral,
    squared_matching_polynomial,
    true_square_weights,
    weighted_matching_sum,
)
from bvlcone.polys import HomogPoly
from bvlcone.sphere_moments import basis_multiindices, monomial_sphere_integral
from bvlcone.tsp_scaling import GraphFamily, knn_constants, veomett_constants
from bvlcone.verify import path_formula_mismatches


def test_cycle_counts():
    assert len(enumerate_cycles(GraphFamily.complete(4))) == 3
    assert len(enumerate_cycles(GraphFamily.complete(5))) == 12
    assert len(enumerate_cycles(GraphFamily.bipartite(3))) == 6
    assert len(enumerate_cycles(GraphFamily.bipartite(4))) == 72


def test_cycles_are_hamiltonian_and_distinct():
    for g in (GraphFamily.complete(6), GraphFamily.bipartite(3)):
        cs = enumerate_cycles(g)
        cycles = cs.cycles()
        assert len(set(cycles)) == len(cycles)
        for c in cycles:
            deg = {}
            for u, v in c:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            assert len(c) == g.num_vertices and set(deg.values()) == {2}
            # connected: walk from vertex 0
            seen, stack = {0}, [0]
            while stack:
                x = stack.pop()
                for u, v in c:
                    y = v if u == x else u if v == x else None
                    if y is not None and y not in seen:
                        seen.add(y)
                        stack.append(y)
            assert len(seen) == g.num_vertices


def test_size_guards():
    with pytest.raises(InputError):
        enumerate_cycles(GraphFamily.complete(11))
    with pytest.raises(InputError):
        enumerate_cycles(GraphFamily.bipartite(6))


def test_monomial_cycle_integral_examples():
    cs = enumerate_cycles(GraphFamily.complete(5))
    assert monomial_cycle_integral(cs, [(0, 1)]) == F(1, 2)
    assert monomial_cycle_integral(cs, {(0, 1): 3}) == F(1, 2)
    assert monomial_cycle_integral(cs, GraphFamily.complete(5).base_cycle()) == F(1, 12)
    assert monomial_cycle_integral(cs, [(0, 1), (0, 2), (0, 3)]) == 0


@pytest.mark.parametrize("g", [GraphFamily.complete(n) for n in (5, 6, 7)]
                         + [GraphFamily.bipartite(n) for n in (3, 4)],
                         ids=["K5", "K6", "K7", "K33", "K44"])
def test_path_formulas_match_enumeration(g):
    checked, bad = path_formula_mismatches(g)
    assert checked > 0 and not bad


@pytest.mark.parametrize("n,k", [(6, 1), (6, 2), (7, 1), (7, 2)])
def test_veomett_two_values(n, k):
    cs = enumerate_cycles(GraphFamily.complete(n))
    tv = sigma_membership_check(cs, as_terms(matching_polynomial(cs.graph, k)))
    vc = veomett_constants(n, k)
    assert tv.ratio == vc.ratio
    assert tv.on_cycle * len(cs) == vc.on_cycle and tv.off_cycle * len(cs) == vc.off_cycle


def test_veomett_ratio_n6():
    cs = enumerate_cycles(GraphFamily.complete(6))
    assert sigma_membership_check(cs, as_terms(matching_polynomial(cs.graph, 1))).ratio == F(2, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_bipartite_constants(n):
    cs = enumerate_cycles(GraphFamily.bipartite(n))
    for k in range(1, n + 1):
        tv = sigma_membership_check(cs, as_terms(matching_polynomial(cs.graph, k)))
        kc = knn_constants(n, k)
        assert tv.on_cycle * len(cs) == kc.on_cycle and tv.off_cycle * len(cs) == kc.off_cycle


def test_constant_certificate_fails():
    cs = enumerate_cycles(GraphFamily.complete(6))
    with pytest.raises(SigmaCheckError):
        sigma_membership_check(cs, [(1, ())])


def test_non_two_valued_fails():
    cs = enumerate_cycles(GraphFamily.complete(6))
    with pytest.raises(SigmaCheckError) as err:
        sigma_membership_check(cs, [(1, ((0, 1),))])
    assert err.value.values


def test_matchings():
    assert len(cycle_matchings(GraphFamily.complete(6))) == 2
    assert len(cycle_matchings(GraphFamily.complete(7))) == 7
    assert len(cycle_matchings(GraphFamily.bipartite(4))) == 2


def test_square_expansion_k1_matches_stated_identity():
    for g in (GraphFamily.complete(6), GraphFamily.complete(7), GraphFamily.bipartite(4)):
        assert squared_matching_polynomial(g, 1) == weighted_matching_sum(g, 1)


def test_square_expansion_general_k():
    # the square carries multiplicity C(i,k) C(k, 2k-i), not C(i,k), on s_i
    for g in (GraphFamily.complete(7), GraphFamily.complete(8), GraphFamily.bipartite(4)):
        sq = squared_matching_polynomial(g, 2)
        assert sq == weighted_matching_sum(g, 2, true_square_weights)
        assert sq != weighted_matching_sum(g, 2)


def test_beta_oracle_examples():
    assert beta_moment_integral((4, 0, 0)) == F(1, 5)
    assert beta_moment_integral((2, 2, 0)) == F(1, 15)
    assert beta_moment_integral((3, 1)) == 0


def test_quadrature_examples():
    assert sphere_quadrature_integral(HomogPoly.monomial((2, 0, 0))) == pytest.approx(1 / 3, abs=1e-10)
    assert sphere_quadrature_integral(HomogPoly.monomial((4, 0, 0))) == pytest.approx(0.2, abs=1e-9)
    assert abs(sphere_quadrature_integral(HomogPoly.monomial((3, 0, 0)))) <= 1e-12


def test_quadrature_matches_closed_form():
    worst = 0.0
    for n in range(2, 5):
        for deg in range(9):
            for a in basis_multiindices(n, deg):
                exact = float(monomial_sphere_integral(a))
                got = sphere_quadrature_integral(HomogPoly.monomial(a))
                worst = max(worst, abs(got - exact) / abs(exact) if exact else abs(got))
    assert worst <= 1e-9


def test_quadrature_guards():
    with pytest.raises(InputError):
        sphere_quadrature_integral(HomogPoly.monomial((2,) + (0,) * 6))
    with pytest.raises(InputError):
        sphere_quadrature_integral(HomogPoly.monomial((14, 0)))
