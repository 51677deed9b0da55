"""Exact monomial integrals on the unit sphere and the moment matrices built from them.

The measure is the rotation-invariant probability measure on S^{n-1}, so every
monomial integral is a rational number:

    int x^a dmu = prod_i (a_i - 1)!! / prod_{j < |a|/2} (n + 2j)

when all a_i are even, and 0 otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._exact import double_factorial
from .numerics import InputError, PSD_REL_TOL, SymMatrix, sym_eig
from .polys import HomogPoly, MultiIndex


@lru_cache(maxsize=None)
def basis_multiindices(n: int, deg: int) -> tuple[MultiIndex, ...]:
    """All exponent vectors of length n and total degree deg, graded-lex descending.

    >>> basis_multiindices(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if n < 1 or deg < 0:
        raise ValueError("need n >= 1 and deg >= 0")
    if n == 1:
        return ((deg,),)
    out = []
    for first in range(deg, -1, -1):
        for rest in basis_multiindices(n - 1, deg - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _sphere_integral(alpha: MultiIndex) -> Fraction:
    if any(a % 2 for a in alpha):
        return Fraction(0)
    n = len(alpha)
    num = 1
    for a in alpha:
        num *= double_factorial(a - 1)
    den = 1
    for j in range(sum(alpha) // 2):
        den *= n + 2 * j
    return Fraction(num, den)


def monomial_sphere_integral(alpha: Sequence[int]) -> Fraction:
    """Integral of x^alpha over S^{n-1} against the normalized surface measure."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) < 2:
        raise ValueError("the sphere needs n >= 2 variables")
    if any(a < 0 for a in alpha):
        raise ValueError("exponents must be nonnegative")
    return _sphere_integral(alpha)


def sphere_integral(p: HomogPoly) -> Fraction:
    return sum((c * monomial_sphere_integral(a) for a, c in p.terms.items()), Fraction(0))


def _check_form(p: HomogPoly, k: int):
    if not isinstance(p, HomogPoly):
        raise InputError("expected a HomogPoly")
    if p.degree % 2:
        raise InputError(f"form has odd degree {p.degree}")
    if k < 0:
        raise InputError("k must be nonnegative")
    if p.n < 2:
        raise InputError("need at least two variables")


def moment_matrix_exact(p: HomogPoly, k: int) -> list[list[Fraction]]:
    """Entries int p(x) x^{b1 + b2} dmu over the degree-2k monomial basis, exactly."""
    _check_form(p, k)
    basis = basis_multiindices(p.n, 2 * k)
    cache: dict[MultiIndex, Fraction] = {}

    def entry(shift: MultiIndex) -> Fraction:
        v = cache.get(shift)
        if v is None:
            v = Fraction(0)
            for a, c in p.terms.items():
                v += c * _sphere_integral(tuple(x + y for x, y in zip(a, shift)))
            cache[shift] = v
        return v

    size = len(basis)
    out = [[Fraction(0)] * size for _ in range(size)]
    for i, b1 in enumerate(basis):
        for j in range(i + 1):
            v = entry(tuple(x + y for x, y in zip(b1, basis[j])))
            out[i][j] = out[j][i] = v
    return out


def moment_matrix(p: HomogPoly, k: int) -> SymMatrix:
    """Float view of :func:`moment_matrix_exact`."""
    exact = moment_matrix_exact(p, k)
    return SymMatrix(np.array([[float(v) for v in row] for row in exact]))


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BORDERLINE = "borderline"


@dataclass(frozen=True)
class MembershipResult:
    verdict: Membership
    min_eigenvalue: float
    tolerance: float
    witness: tuple[Fraction, ...] | None = None  # q in the degree-2k monomial basis
    witness_value: Fraction | None = None  # exact int p q^2 dmu
    basis: tuple[MultiIndex, ...] = ()

    @property
    def outside(self) -> bool:
        return self.verdict is Membership.OUTSIDE

    def witness_poly(self) -> HomogPoly | None:
        if self.witness is None:
            return None
        n = len(self.basis[0])
        return HomogPoly(n, sum(self.basis[0]), dict(zip(self.basis, self.witness)))


def quadratic_form(mat: list[list[Fraction]], v: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi:
            row = mat[i]
            total += vi * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
    return total


def exact_psd_witness(mat: list[list[Fraction]]) -> tuple[Fraction, ...] | None:
    """None if the rational symmetric matrix is PSD, else v with v^T M v < 0.

    Symmetric Gaussian elimination without pivoting in exact arithmetic.
    """
    n = len(mat)
    a = [row[:] for row in mat]
    lower = [[Fraction(0)] * n for _ in range(n)]
    y = None
    for i in range(n):
        piv = a[i][i]
        if piv < 0:
            y = {i: Fraction(1)}
            break
        if piv == 0:
            j = next((c for c in range(i + 1, n) if a[i][c] != 0), None)
            if j is None:
                continue
            sij, sjj = a[i][j], a[j][j]
            # (e_i + t e_j)^T S (e_i + t e_j) = 2 t s_ij + t^2 s_jj < 0 for this t
            y = {i: Fraction(1), j: -sij / (abs(sjj) + abs(sij))}
            break
        row_i = a[i]
        for r in range(i + 1, n):
            f = a[r][i] / piv
            lower[r][i] = f
            if f:
                row_r = a[r]
                for c in range(i + 1, n):
                    row_r[c] -= f * row_i[c]
    if y is None:
        return None
    # solve L^T x = y
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        v = y.get(r, Fraction(0))
        for c in range(r + 1, n):
            if lower[c][r]:
                v -= lower[c][r] * x[c]
        x[r] = v
    return tuple(x)


def membership_test(p: HomogPoly, k: int, rel_tol: float = PSD_REL_TOL,
                    exact_tiebreak: bool = True) -> MembershipResult:
    """Decide whether p lies in the level-k spectrahedral outer approximation.

    The float spectrum decides clear cases: Inside when the smallest eigenvalue
    is at least +tol, Outside when it is at most -tol and its eigenvector,
    rounded to rationals, gives an exactly negative int p q^2.  Anything else
    is settled by an exact rational LDL^T test when ``exact_tiebreak`` is set,
    and reported as Borderline otherwise.
    """
    exact = moment_matrix_exact(p, k)
    basis = basis_multiindices(p.n, 2 * k)
    mat = np.array([[float(v) for v in row] for row in exact])
    vals, vecs = sym_eig(mat)
    lam = float(vals[-1])
    tol = rel_tol * (1.0 + float(np.linalg.norm(mat)))
    if lam >= tol:
        return MembershipResult(Membership.INSIDE, lam, tol, basis=basis)
    if lam <= -tol:
        vec = vecs[:, -1]
        vec = vec / np.max(np.abs(vec))
        witness = tuple(Fraction(float(x)) for x in vec)
        value = quadratic_form(exact, witness)
        if value < 0:
            return MembershipResult(Membership.OUTSIDE, lam, tol, witness, value, basis)
    if not exact_tiebreak:
        return MembershipResult(Membership.BORDERLINE, lam, tol, basis=basis)
    witness = exact_psd_witness(exact)
    if witness is None:
        return MembershipResult(Membership.INSIDE, lam, tol, basis=basis)
    scale = max(abs(v) for v in witness)
    witness = tuple(v / scale for v in witness)
    value = quadratic_form(exact, witness)
    assert value < 0
    return MembershipResult(Membership.OUTSIDE, lam, tol, witness, value, basis)
