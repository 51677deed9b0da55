"""Exact rational helpers shared by the moment and TSP code."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import factorial as _factorial


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return _factorial(n)


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return factorial(a) // (factorial(b) * factorial(a - b))


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_half(k: int) -> tuple[Fraction, int]:
    """Gamma(k/2) for a positive integer k as (rational, power of sqrt(pi)).

    Gamma(m) = (m-1)! for integer m, and Gamma(m + 1/2) = (2m-1)!!/2^m sqrt(pi).
    """
    if k <= 0:
        raise ValueError("gamma_half needs a positive argument")
    if k % 2 == 0:
        return Fraction(factorial(k // 2 - 1)), 0
    m = (k - 1) // 2
    return Fraction(double_factorial(2 * m - 1), 2**m), 1


def gamma_ratio(num: list[int], den: list[int]) -> Fraction:
    """prod Gamma(a/2) / prod Gamma(b/2); the sqrt(pi) powers must cancel."""
    value = Fraction(1)
    power = 0
    for k in num:
        g, p = gamma_half(k)
        value *= g
        power += p
    for k in den:
        g, p = gamma_half(k)
        value /= g
        power -= p
    if power != 0:
        raise ValueError("Gamma ratio is not rational (pi powers do not cancel)")
    return value


def decimal_str(x: Fraction | int, digits: int = 20) -> str:
    """Render a rational to `digits` significant digits."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d, "f") if d == d.to_integral_value() else str(d)
    return s
