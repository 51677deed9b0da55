"""Exact polynomial types: homogeneous forms in n variables and univariate polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

MultiIndex = tuple[int, ...]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class HomogPoly:
    """Homogeneous polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (all of length ``n`` and total degree
    ``degree``) to nonzero Fractions.
    """

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: Mapping[MultiIndex, object] | None = None):
        if n < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[MultiIndex, Fraction] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent {alpha} for {n} variables")
            if sum(alpha) != degree:
                raise ValueError(f"term {alpha} is not of degree {degree}")
            c = _frac(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        self.n = n
        self.degree = degree
        self.terms = {a: c for a, c in clean.items() if c}

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[object, Sequence[int]]]) -> "HomogPoly":
        """Build from (coefficient, exponents) pairs; the degree is inferred."""
        terms = [(c, tuple(a)) for c, a in terms]
        degrees = {sum(a) for _, a in terms}
        if len(degrees) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
        degree = degrees.pop() if degrees else 0
        acc: dict[MultiIndex, Fraction] = {}
        for c, a in terms:
            acc[a] = acc.get(a, Fraction(0)) + _frac(c)
        return cls(n, degree, acc)

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff=1) -> "HomogPoly":
        alpha = tuple(alpha)
        return cls(len(alpha), sum(alpha), {alpha: coeff})

    @classmethod
    def sphere_power(cls, n: int, k: int) -> "HomogPoly":
        """s^k with s = x_1^2 + ... + x_n^2."""
        out = cls(n, 0, {(0,) * n: 1})
        s = cls(n, 2, {tuple(2 if i == j else 0 for i in range(n)): 1 for j in range(n)})
        for _ in range(k):
            out = out * s
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "HomogPoly"):
        if self.n != other.n:
            raise ValueError("variable counts differ")

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        acc = dict(self.terms)
        for a, c in other.terms.items():
            acc[a] = acc.get(a, Fraction(0)) + c
        return HomogPoly(self.n, self.degree, acc)

    def __neg__(self):
        return HomogPoly(self.n, self.degree, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            self._check(other)
            acc: dict[MultiIndex, Fraction] = {}
            for a, c in self.terms.items():
                for b, d in other.terms.items():
                    key = tuple(x + y for x, y in zip(a, b))
                    acc[key] = acc.get(key, Fraction(0)) + c * d
            return HomogPoly(self.n, self.degree + other.degree, acc)
        c = _frac(other)
        return HomogPoly(self.n, self.degree, {a: c * v for a, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.degree, frozenset(self.terms.items())))

    def laplacian(self) -> "HomogPoly":
        acc: dict[MultiIndex, Fraction] = {}
        for a, c in self.terms.items():
            for i, e in enumerate(a):
                if e >= 2:
                    b = a[:i] + (e - 2,) + a[i + 1:]
                    acc[b] = acc.get(b, Fraction(0)) + c * e * (e - 1)
        return HomogPoly(self.n, max(self.degree - 2, 0), acc)

    def __call__(self, point: Sequence) -> Fraction | float:
        total = 0
        for a, c in self.terms.items():
            v = c
            for x, e in zip(point, a):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def __repr__(self):
        if self.is_zero():
            return f"HomogPoly(n={self.n}, 0)"
        body = " + ".join(f"{c}*x^{a}" for a, c in sorted(self.terms.items(), reverse=True))
        return f"HomogPoly(n={self.n}, {body})"


class UniPoly:
    """Univariate polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            if self.is_zero() or other.is_zero():
                return UniPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return UniPoly(out)
        c = _frac(other)
        return UniPoly(c * a for a in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = _frac(c)
        return UniPoly(a / c for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * oc
        return UniPoly(quot), UniPoly(rem[:dq] if dq else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        return self / self.lead() if self.coeffs else self

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "UniPoly":
        g = self.gcd(self.derivative())
        return self.divmod(g)[0] if g.degree > 0 else self

    def compose_affine(self, scale, shift) -> "UniPoly":
        """p(scale*x + shift)."""
        lin = UniPoly([shift, scale])
        out = UniPoly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    # -- real roots --------------------------------------------------------

    def sturm_sequence(self) -> list["UniPoly"]:
        seq = [self, self.derivative()]
        while not seq[-1].is_zero() and seq[-1].degree > 0:
            r = seq[-2] % seq[-1]
            if r.is_zero():
                break
            seq.append(-r)
        return [p for p in seq if not p.is_zero()]

    @staticmethod
    def _sign_changes(seq, x) -> int:
        signs = [s for s in (p(x) for p in seq) if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    def count_roots(self, lo, hi, sturm=None) -> int:
        """Number of distinct real roots in the half-open interval (lo, hi]."""
        seq = sturm or self.sturm_sequence()
        return self._sign_changes(seq, _frac(lo)) - self._sign_changes(seq, _frac(hi))

    def isolate_roots(self, lo, hi) -> list[tuple[Fraction, Fraction]]:
        """Disjoint intervals (a, b] each holding exactly one distinct root in [lo, hi].

        A root that is hit exactly is returned as a degenerate interval (r, r).
        """
        lo, hi = _frac(lo), _frac(hi)
        if self.is_zero():
            raise ValueError("the zero polynomial has no isolated roots")
        p = self.squarefree()
        if p.degree <= 0:
            return []
        seq = p.sturm_sequence()
        out: list[tuple[Fraction, Fraction]] = []
        if p(lo) == 0:
            out.append((lo, lo))
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            cnt = p.count_roots(a, b, seq)
            if cnt == 0:
                continue
            if cnt == 1:
                out.append((b, b) if p(b) == 0 else (a, b))
                continue
            mid = (a + b) / 2
            stack.append((mid, b))
            stack.append((a, mid))
        return sorted(out)

    def real_roots(self, lo=-1, hi=1, tol=Fraction(1, 10**12)) -> list[Fraction]:
        """Distinct real roots in [lo, hi], refined by bisection to width ``tol``.

        Roots that are hit exactly during bisection are returned exactly.
        """
        tol = _frac(tol)
        p = self.squarefree()
        roots = []
        for a, b in self.isolate_roots(lo, hi):
            if a == b:
                roots.append(a)
                continue
            # p(b) != 0 here and p keeps the sign of p(b) between the root and b
            fb = p(b)
            while b - a > tol:
                mid = (a + b) / 2
                fm = p(mid)
                if fm == 0:
                    a = b = mid
                    break
                if (fm > 0) == (fb > 0):
                    b, fb = mid, fm
                else:
                    a = mid
            roots.append((a + b) / 2)
        return roots

    def minimize(self, lo=-1, hi=1, tol=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
        """Global minimum on [lo, hi] as (argmin, min).

        Candidates are the endpoints and the critical points isolated with
        Sturm sequences; the value is exact at the returned argmin.
        """
        lo, hi = _frac(lo), _frac(hi)
        cands = [lo, hi]
        d = self.derivative()
        if not d.is_zero():
            cands += d.real_roots(lo, hi, tol)
        best = min(cands, key=lambda x: (self(x), x))
        return best, self(best)
