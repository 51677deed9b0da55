import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bvlcone.numerics import (
    DegenerateConstraintsError,
    InputError,
    SdpProblem,
    SdpStatus,
    SymMatrix,
    is_psd,
    min_eigenvalue,
    solve_sdp,
    sym_eig,
)


def test_sym_eig_examples():
    vals, _ = sym_eig(SymMatrix.identity(3))
    assert np.allclose(vals, [1, 1, 1])
    vals, _ = sym_eig(SymMatrix.diag([3, 1, 2]))
    assert np.allclose(vals, [3, 2, 1])
    vals, _ = sym_eig(SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
    assert np.allclose(vals, [1, -1])


def test_min_eigenvalue_examples():
    assert min_eigenvalue(SymMatrix.identity(4)) == pytest.approx(1)
    assert min_eigenvalue(SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))) == pytest.approx(-1)
    assert min_eigenvalue(SymMatrix(np.zeros((3, 3)))) == 0


def test_symmatrix_uses_lower_triangle():
    m = SymMatrix(np.array([[1.0, 99.0], [2.0, 3.0]]))
    assert m.array[0, 1] == 2.0
    assert not m.array.flags.writeable


def test_non_finite_input():
    with pytest.raises(InputError):
        SymMatrix(np.array([[np.nan]]))
    with pytest.raises(InputError):
        SymMatrix(np.zeros((0, 0)))
    with pytest.raises(InputError):
        sym_eig(np.array([[1.0, np.inf], [np.inf, 1.0]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_sym_eig_reconstruction(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) * 10 ** rng.uniform(-3, 3)
    m = SymMatrix(a + a.T)
    vals, vecs = sym_eig(m)
    assert np.all(np.diff(vals) <= 0)
    err = np.linalg.norm(m.array - vecs @ np.diag(vals) @ vecs.T)
    assert err <= 1e-10 * (1 + m.frobenius)
    assert np.allclose(vecs.T @ vecs, np.eye(n), atol=1e-10)
    assert abs(min_eigenvalue(m) - vals[-1]) <= 1e-10 * (1 + m.frobenius)


def test_psd_tolerance_rule():
    assert is_psd(SymMatrix.diag([1.0, -1e-12]))
    assert not is_psd(SymMatrix.diag([1.0, -1e-3]))


def test_trivial_sdps():
    sol = solve_sdp(SdpProblem.from_arrays(np.diag([1.0, 2.0]), [np.eye(2)], [1.0]))
    assert sol.status is SdpStatus.OPTIMAL
    assert sol.value == pytest.approx(1, abs=1e-7)
    assert np.allclose(sol.primal.array, np.diag([1.0, 0.0]), atol=1e-6)
    sol = solve_sdp(SdpProblem.from_arrays(np.array([[0.0, 1.0], [1.0, 0.0]]), [np.eye(2)], [1.0]))
    assert sol.optimal
    assert sol.value == pytest.approx(-1, abs=1e-7)


def test_optimal_solution_postconditions():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((8, 8))
    c = a + a.T
    sol = solve_sdp(SdpProblem.from_arrays(c, [np.eye(8)], [1.0]), tol=1e-8)
    assert sol.optimal
    assert abs(sol.gap) <= 1e-8
    assert sol.primal_residual <= 1e-8 and sol.dual_residual <= 1e-8
    assert min_eigenvalue(sol.primal) >= -1e-8
    assert sol.value == pytest.approx(float(np.sum(c * sol.primal.array)), abs=1e-12)


def test_min_eigenvalue_program_matches_eigensolver():
    rng = np.random.default_rng(20240101)
    a = rng.standard_normal((30, 30))
    c = SymMatrix(a + a.T)
    sol = solve_sdp(SdpProblem(c, ((SymMatrix.identity(30), 1.0),)))
    assert sol.optimal
    assert abs(sol.value - min_eigenvalue(c)) <= 1e-7


def _random_problem(rng, n, m):
    c = rng.standard_normal((n, n))
    c = c @ c.T + np.eye(n)
    x0 = rng.standard_normal((n, n))
    x0 = x0 @ x0.T + np.eye(n)
    a_list = []
    for _ in range(m):
        a = rng.standard_normal((n, n))
        a_list.append(a + a.T)
    b = [float(np.sum(a * x0)) for a in a_list]
    return SdpProblem.from_arrays(c, a_list, b)


def test_weak_duality_along_iterates():
    rng = np.random.default_rng(11)
    for _ in range(5):
        sol = solve_sdp(_random_problem(rng, 6, 4))
        assert sol.optimal
        for pobj, dobj in sol.history:
            assert dobj <= pobj + 1e-9 * max(1.0, abs(pobj))


def test_permutation_invariance():
    rng = np.random.default_rng(5)
    prob = _random_problem(rng, 7, 3)
    base = solve_sdp(prob)
    perm = rng.permutation(7)
    other = solve_sdp(prob.permuted(perm))
    assert base.optimal and other.optimal
    assert abs(base.value - other.value) <= 1e-8 * max(1.0, abs(base.value))


def test_degenerate_constraints_rejected():
    a = np.diag([1.0, 0.0])
    with pytest.raises(DegenerateConstraintsError):
        solve_sdp(SdpProblem.from_arrays(np.eye(2), [a, 2 * a], [1.0, 2.0]))


def test_infeasible_is_reported():
    # tr X = -1 has no PSD solution
    sol = solve_sdp(SdpProblem.from_arrays(np.eye(2), [np.eye(2)], [-1.0]))
    assert sol.status is SdpStatus.INFEASIBLE


def test_mismatched_dimensions():
    with pytest.raises(InputError):
        SdpProblem.from_arrays(np.eye(2), [np.eye(3)], [1.0])
    with pytest.raises(InputError):
        SdpProblem.from_arrays(np.eye(2), [], [])
