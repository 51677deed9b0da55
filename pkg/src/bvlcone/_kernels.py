"""Hot numeric loops, compiled with numba when available.

Set ``BVLCONE_DISABLE_NUMBA=1`` to force the pure-numpy implementations.
Both paths return the same results up to floating-point rounding.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_DISABLED = os.environ.get("BVLCONE_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")
HAVE_NUMBA = numba is not None and not NUMBA_DISABLED

_EPS = 2.0**-52
_MAX_QL_SWEEPS = 60


# ---------------------------------------------------------------------------
# symmetric eigensolver: Householder tridiagonalization + implicit QL
# ---------------------------------------------------------------------------

def _tred2_loops(V, d, e):
    # Householder reduction of the symmetric matrix stored in V (lower part used).
    n = V.shape[0]
    for j in range(n):
        d[j] = V[n - 1, j]
    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += abs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
                V[j, i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = math.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h = h - f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                V[j, i] = f
                g = e[j] + V[j, j] * f
                for k in range(j + 1, i):
                    g += V[k, j] * d[k]
                    e[k] += V[k, j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    V[k, j] -= f * e[k] + g * d[k]
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
        d[i] = h
    for i in range(n - 1):
        V[n - 1, i] = V[i, i]
        V[i, i] = 1.0
        h = d[i + 1]
        if h != 0.0:
            for k in range(i + 1):
                d[k] = V[k, i + 1] / h
            for j in range(i + 1):
                g = 0.0
                for k in range(i + 1):
                    g += V[k, i + 1] * V[k, j]
                for k in range(i + 1):
                    V[k, j] -= g * d[k]
        for k in range(i + 1):
            V[k, i + 1] = 0.0
    for j in range(n):
        d[j] = V[n - 1, j]
        V[n - 1, j] = 0.0
    V[n - 1, n - 1] = 1.0
    e[0] = 0.0


def _tql2_loops(V, d, e):
    # Implicit QL on the tridiagonal (d, e); rotations accumulated into V.
    # Returns 0 on success, 1 if some eigenvalue failed to converge.
    n = d.shape[0]
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1:
            if abs(e[m]) <= _EPS * tst1:
                break
            m += 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > _MAX_QL_SWEEPS:
                    return 1
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h
                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    for k in range(n):
                        h = V[k, i + 1]
                        V[k, i + 1] = s * V[k, i] + c * h
                        V[k, i] = c * V[k, i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= _EPS * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return 0


def _eigh_loops(a):
    n = a.shape[0]
    V = a.copy()
    d = np.zeros(n)
    e = np.zeros(n)
    if n == 1:
        V[0, 0] = 1.0
        d[0] = a[0, 0]
        return d, V, 0
    _tred2(V, d, e)
    status = _tql2(V, d, e)
    return d, V, status


# -- pure numpy path ---------------------------------------------------------

def _tridiagonalize_np(a):
    n = a.shape[0]
    A = a.copy()
    Q = np.eye(n)
    for j in range(n - 2):
        x = A[j + 1:, j]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        alpha = -math.copysign(norm_x, x[0])
        v = x.copy()
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            continue
        v /= vn
        A[j + 1:, :] -= 2.0 * np.outer(v, v @ A[j + 1:, :])
        A[:, j + 1:] -= 2.0 * np.outer(A[:, j + 1:] @ v, v)
        Q[:, j + 1:] -= 2.0 * np.outer(Q[:, j + 1:] @ v, v)
    d = np.diag(A).copy()
    e = np.zeros(n)
    e[1:] = np.diag(A, -1)
    return d, e, Q


def _tql2_np(V, d, e):
    n = d.shape[0]
    e[:-1] = e[1:]
    e[-1] = 0.0
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n - 1 and abs(e[m]) > _EPS * tst1:
            m += 1
        if m == l:
            d[l] += f
            e[l] = 0.0
            continue
        for _ in range(_MAX_QL_SWEEPS):
            g = d[l]
            p = (d[l + 1] - g) / (2.0 * e[l])
            r = math.hypot(p, 1.0)
            if p < 0:
                r = -r
            d[l] = e[l] / (p + r)
            d[l + 1] = e[l] * (p + r)
            dl1 = d[l + 1]
            h = g - d[l]
            d[l + 2:] -= h
            f += h
            p = d[m]
            c = c2 = c3 = 1.0
            el1 = e[l + 1]
            s = s2 = 0.0
            for i in range(m - 1, l - 1, -1):
                c3, c2, s2 = c2, c, s
                g = c * e[i]
                h = c * p
                r = math.hypot(p, e[i])
                e[i + 1] = s * r
                s = e[i] / r
                c = p / r
                p = c * d[i] - s * g
                d[i + 1] = h + s * (c * g + s * d[i])
                col = V[:, i + 1].copy()
                V[:, i + 1] = s * V[:, i] + c * col
                V[:, i] = c * V[:, i] - s * col
            p = -s * s2 * c3 * el1 * e[l] / dl1
            e[l] = s * p
            d[l] = c * p
            if abs(e[l]) <= _EPS * tst1:
                break
        else:
            return 1
        d[l] += f
        e[l] = 0.0
    return 0


def _eigh_numpy(a):
    n = a.shape[0]
    if n == 1:
        return a[0].copy(), np.ones((1, 1)), 0
    d, e, Q = _tridiagonalize_np(a)
    status = _tql2_np(Q, d, e)
    return d, Q, status


# ---------------------------------------------------------------------------
# cycle containment counting over edge bitmasks
# ---------------------------------------------------------------------------

def _count_supersets_loops(masks, queries):
    out = np.zeros(queries.shape[0], dtype=np.int64)
    for j in range(queries.shape[0]):
        q = queries[j]
        c = 0
        for i in range(masks.shape[0]):
            if masks[i] & q == q:
                c += 1
        out[j] = c
    return out


def _count_supersets_numpy(masks, queries, chunk=256):
    out = np.empty(queries.shape[0], dtype=np.int64)
    for start in range(0, queries.shape[0], chunk):
        q = queries[start:start + chunk, None]
        out[start:start + chunk] = np.count_nonzero((masks[None, :] & q) == q, axis=1)
    return out


if HAVE_NUMBA:
    _jit = numba.njit(cache=True)
    _tred2 = _jit(_tred2_loops)
    _tql2 = _jit(_tql2_loops)
    _count_supersets_jit = _jit(_count_supersets_loops)
else:
    _tred2 = _tred2_loops
    _tql2 = _tql2_loops
    _count_supersets_jit = None


def eigh(a: np.ndarray, backend: str | None = None):
    """Eigen-decomposition of a symmetric float64 matrix.

    Returns (eigenvalues, eigenvector columns, status) with unsorted
    eigenvalues; status is nonzero when QL failed to converge.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    backend = backend or ("numba" if HAVE_NUMBA else "numpy")
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _eigh_loops(a)
    if backend == "numpy":
        return _eigh_numpy(a)
    raise ValueError(f"unknown backend {backend!r}")


def count_supersets(masks: np.ndarray, queries: np.ndarray, backend: str | None = None) -> np.ndarray:
    """For each query bitmask, count the masks that contain all of its bits."""
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    queries = np.ascontiguousarray(queries, dtype=np.uint64)
    backend = backend or ("numba" if HAVE_NUMBA else "numpy")
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but unavailable")
        return _count_supersets_jit(masks, queries)
    if backend == "numpy":
        return _count_supersets_numpy(masks, queries)
    raise ValueError(f"unknown backend {backend!r}")
