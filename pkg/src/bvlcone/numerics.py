"""Dense symmetric linear algebra and a small primal-dual SDP solver.

The solver handles the standard form

    minimize <C, X>  subject to  <A_i, X> = b_i,  X positive semidefinite,

together with its dual  maximize b'y  subject to  C - sum_i y_i A_i = Z >= 0.
Block-diagonal programs are passed as one dense matrix; the central path of
such a program stays block diagonal, so nothing is lost.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels

PSD_REL_TOL = 1e-8


class InputError(ValueError):
    """Raised for malformed numeric input (non-finite entries, bad shapes)."""


class DegenerateConstraintsError(InputError):
    """The constraint matrices are (numerically) linearly dependent."""


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense real symmetric matrix.

    Only the lower triangle of the input is read; the stored array is the
    symmetric completion and is marked read-only.
    """

    array: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.array, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InputError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InputError("matrix has non-finite entries")
        low = np.tril(a)
        full = low + np.tril(a, -1).T
        full.setflags(write=False)
        object.__setattr__(self, "array", full)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self.array))

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @classmethod
    def diag(cls, values: Sequence[float]) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    def inner(self, other: "SymMatrix") -> float:
        return float(np.sum(self.array * other.array))

    def permuted(self, perm: Sequence[int]) -> "SymMatrix":
        p = np.asarray(perm)
        return SymMatrix(self.array[np.ix_(p, p)])

    def __repr__(self) -> str:
        return f"SymMatrix(dim={self.dim})"


def _as_array(m) -> np.ndarray:
    a = m.array if isinstance(m, SymMatrix) else np.asarray(m, dtype=np.float64)
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return a


def sym_eig(m: SymMatrix | np.ndarray, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvector columns."""
    a = _as_array(m)
    a = 0.5 * (a + a.T)
    vals, vecs, status = _kernels.eigh(a, backend)
    if status:
        raise ArithmeticError("implicit QL iteration did not converge")
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def min_eigenvalue(m: SymMatrix | np.ndarray) -> float:
    return float(sym_eig(m)[0][-1])


def psd_tolerance(m: SymMatrix | np.ndarray, rel_tol: float = PSD_REL_TOL) -> float:
    return rel_tol * (1.0 + float(np.linalg.norm(_as_array(m))))


def is_psd(m: SymMatrix | np.ndarray, rel_tol: float = PSD_REL_TOL) -> bool:
    return min_eigenvalue(m) >= -psd_tolerance(m, rel_tol)


# ---------------------------------------------------------------------------
# semidefinite programming
# ---------------------------------------------------------------------------

class SdpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    MAX_ITER = "max_iter"


@dataclass(frozen=True, eq=False)
class SdpProblem:
    objective: SymMatrix
    constraints: tuple[tuple[SymMatrix, float], ...]

    def __post_init__(self):
        cons = tuple((a if isinstance(a, SymMatrix) else SymMatrix(a), float(b)) for a, b in self.constraints)
        if not cons:
            raise InputError("an SDP needs at least one constraint")
        obj = self.objective if isinstance(self.objective, SymMatrix) else SymMatrix(self.objective)
        for a, _ in cons:
            if a.dim != obj.dim:
                raise InputError("all data matrices must share one dimension")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", cons)

    @property
    def dim(self) -> int:
        return self.objective.dim

    @classmethod
    def from_arrays(cls, c, a_list, b) -> "SdpProblem":
        return cls(SymMatrix(c), tuple((SymMatrix(a), float(bi)) for a, bi in zip(a_list, b)))

    def permuted(self, perm: Sequence[int]) -> "SdpProblem":
        return SdpProblem(self.objective.permuted(perm),
                          tuple((a.permuted(perm), b) for a, b in self.constraints))


@dataclass(eq=False)
class SdpSolution:
    primal: SymMatrix
    dual: np.ndarray
    status: SdpStatus
    gap: float  # |pobj - dobj| / (1 + |pobj| + |dobj|)
    value: float
    dual_value: float = float("nan")
    abs_gap: float = float("nan")
    slack: SymMatrix | None = None
    primal_residual: float = float("nan")
    dual_residual: float = float("nan")
    iterations: int = 0
    history: list[tuple[float, float]] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status is SdpStatus.OPTIMAL


def _jordan(a, b):
    return 0.5 * (a @ b + b @ a)


def _max_step(lam_isqrt, d):
    # Largest alpha with diag(lam) + alpha*d >= 0, in the scaled space.
    m = lam_isqrt[:, None] * d * lam_isqrt[None, :]
    w = np.linalg.eigvalsh(0.5 * (m + m.T))[0]
    return np.inf if w >= 0 else -1.0 / w


def _chol(m):
    m = 0.5 * (m + m.T)
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        w = np.linalg.eigvalsh(m)[0]
        shift = max(-w, 0.0) + 1e-14 * max(1.0, np.abs(m).max())
        return np.linalg.cholesky(m + shift * np.eye(m.shape[0]))


def solve_sdp(problem: SdpProblem, tol: float = 1e-8, max_iter: int = 200) -> SdpSolution:
    """Solve a standard-form SDP with an infeasible-start primal-dual method.

    Search directions use Nesterov-Todd scaling with a Mehrotra
    predictor-corrector step. ``status`` is OPTIMAL only when relative gap and
    both relative residuals are below ``tol``.
    """
    C = _as_array(problem.objective)
    A_raw = np.array([_as_array(a) for a, _ in problem.constraints])
    b_raw = np.array([b for _, b in problem.constraints], dtype=float)
    if not np.all(np.isfinite(b_raw)):
        raise InputError("right-hand side has non-finite entries")
    N = C.shape[0]
    m = len(b_raw)

    # row scaling of the equality constraints
    norms = np.sqrt(np.einsum("kij,kij->k", A_raw, A_raw))
    if np.any(norms == 0):
        raise DegenerateConstraintsError("a constraint matrix is identically zero")
    A = A_raw / norms[:, None, None]
    b = b_raw / norms
    A_flat = A.reshape(m, -1)
    gram_eigs = np.linalg.eigvalsh(A_flat @ A_flat.T)
    if gram_eigs[0] <= 1e-12 * max(gram_eigs[-1], 1.0):
        raise DegenerateConstraintsError(
            f"constraint Gram matrix is rank deficient (min eigenvalue {gram_eigs[0]:.3e})")

    normC = np.linalg.norm(C)
    xi = max(10.0, np.sqrt(N), N * np.max((1.0 + np.abs(b)) / 2.0))
    eta = max(10.0, np.sqrt(N), normC, 1.0)
    X = xi * np.eye(N)
    Z = eta * np.eye(N)
    y = np.zeros(m)

    def A_op(M):
        return A_flat @ M.reshape(-1)

    def At_op(v):
        return np.tensordot(v, A, axes=1)

    history: list[tuple[float, float]] = []
    status = SdpStatus.MAX_ITER
    it = 0
    stall = 0
    pinf = dinf = rel_gap = np.inf
    for it in range(1, max_iter + 1):
        rp = b - A_op(X)
        Rd = C - At_op(y) - Z
        pobj = float(np.sum(C * X))
        dobj = float(b @ y)
        history.append((pobj, dobj))
        mu = float(np.sum(X * Z)) / N
        pinf = np.linalg.norm(rp) / (1.0 + np.linalg.norm(b))
        dinf = np.linalg.norm(Rd) / (1.0 + normC)
        rel_gap = abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj))
        if pinf <= tol and dinf <= tol and rel_gap <= tol:
            status = SdpStatus.OPTIMAL
            break
        # crude certificates of infeasibility
        ynorm = np.linalg.norm(y)
        if dobj > 0 and ynorm > 1e8 and np.linalg.norm(At_op(y) + Z) <= 1e-6 * dobj:
            status = SdpStatus.INFEASIBLE
            break
        xnorm = np.linalg.norm(X)
        if pobj < 0 and xnorm > 1e8 and np.linalg.norm(A_op(X)) <= 1e-6 * (-pobj):
            status = SdpStatus.UNBOUNDED
            break

        # Nesterov-Todd scaling point: R^{-1} X R^{-T} = R^T Z R = diag(lam)
        Lx = _chol(X)
        Lz = _chol(Z)
        U, s, Vt = np.linalg.svd(Lz.T @ Lx)
        R = Lx @ Vt.T / np.sqrt(s)[None, :]
        Rinv = (U.T @ Lz.T) / np.sqrt(s)[:, None]
        lam = s
        lam_isqrt = 1.0 / np.sqrt(lam)
        As = np.einsum("ji,kjl,lm->kim", R, A, R, optimize=True)
        As_flat = As.reshape(m, -1)
        M = As_flat @ As_flat.T
        Rd_s = R.T @ Rd @ R
        try:
            Mc = np.linalg.cholesky(0.5 * (M + M.T))
            solveM = lambda v: np.linalg.solve(Mc.T, np.linalg.solve(Mc, v))  # noqa: E731
        except np.linalg.LinAlgError:
            solveM = lambda v: np.linalg.lstsq(M, v, rcond=None)[0]  # noqa: E731
        lsum = lam[:, None] + lam[None, :]

        def direction(T):
            H = 2.0 * T / lsum
            dy = solveM(rp - As_flat @ (H - Rd_s).reshape(-1))
            DZ = Rd_s - np.tensordot(dy, As, axes=1)
            DX = H - DZ
            return dy, DX, DZ

        Lam = np.diag(lam)
        dy_a, DX_a, DZ_a = direction(-Lam @ Lam)
        ap = min(1.0, _max_step(lam_isqrt, DX_a))
        ad = min(1.0, _max_step(lam_isqrt, DZ_a))
        mu_aff = float(np.sum((Lam + ap * DX_a) * (Lam + ad * DZ_a))) / N
        sigma = min(1.0, max(0.0, mu_aff / mu)) ** 3
        T = sigma * mu * np.eye(N) - Lam @ Lam - _jordan(DX_a, DZ_a)
        dy, DX, DZ = direction(T)
        ap = min(1.0, 0.98 * _max_step(lam_isqrt, DX))
        ad = min(1.0, 0.98 * _max_step(lam_isqrt, DZ))
        dX = R @ DX @ R.T
        dZ = Rinv.T @ DZ @ Rinv
        X = X + ap * dX
        X = 0.5 * (X + X.T)
        y = y + ad * dy
        Z = Z + ad * dZ
        Z = 0.5 * (Z + Z.T)
        stall = stall + 1 if max(ap, ad) < 1e-8 else 0
        if stall >= 5:
            break

    pobj = float(np.sum(C * X))
    dobj = float(b @ y)
    y_out = y / norms
    return SdpSolution(
        primal=SymMatrix(X),
        dual=y_out,
        status=status,
        gap=abs(pobj - dobj) / (1.0 + abs(pobj) + abs(dobj)),
        abs_gap=pobj - dobj,
        value=pobj,
        dual_value=dobj,
        slack=SymMatrix(Z),
        primal_residual=float(pinf),
        dual_residual=float(dinf),
        iterations=it,
        history=history,
    )
