"""Limits of ratios f(x)/g(x) as x -> 0 from exact expansions.

With m the first exponent where the numerator or the denominator has a
nonzero coefficient, the limit is a_m/b_m when b_m != 0.  Otherwise it is
infinite with sign sgn(a_m) sgn(b_l) when the gap l - m to the next nonzero
denominator coefficient is even, and does not exist when the gap is odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AllZeroDenominator, PoleAtZero
from .expr.ast import Expr
from .expr.expand import expand_laurent, expand_taylor
from .numbers import format_rational
from .taylor import LaurentPoly

DEFAULT_ORDER = 8
MAX_ORDER = 32


@dataclass(frozen=True)
class LimitResult:
    tag: str  # Finite, PlusInfinity, MinusInfinity, NoLimit, Inconclusive
    value: Optional[Fraction] = None
    max_order: Optional[int] = None

    def __str__(self):
        if self.tag == "Finite":
            return f"finite {format_rational(self.value)}"
        if self.tag == "Inconclusive":
            return f"inconclusive({self.max_order})"
        return {"PlusInfinity": "+inf", "MinusInfinity": "-inf", "NoLimit": "no-limit"}[self.tag]


def Finite(v) -> LimitResult:
    return LimitResult("Finite", Fraction(v))


PLUS_INFINITY = LimitResult("PlusInfinity")
MINUS_INFINITY = LimitResult("MinusInfinity")
NO_LIMIT = LimitResult("NoLimit")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _classify(p: LaurentPoly, q: LaurentPoly) -> Optional[LimitResult]:
    """Verdict from the known coefficients, or None when they do not decide it."""
    if q.valuation() is None:
        raise AllZeroDenominator("every known denominator coefficient is 0")
    top = min(p.mhigh, q.mhigh)
    for m in range(min(p.mlow, q.mlow), top + 1):
        a, b = p.coeff(m), q.coeff(m)
        if b:
            return Finite(a / b)
        if a:
            for l in range(m + 1, q.mhigh + 1):
                bl = q.coeff(l)
                if bl:
                    if (l - m) % 2:
                        return NO_LIMIT
                    return PLUS_INFINITY if _sign(a) * _sign(bl) > 0 else MINUS_INFINITY
            return None
    return None


def laurent_ratio_limit(p: LaurentPoly, q: LaurentPoly) -> LimitResult:
    """Limit at 0 of p/q, coefficient vectors aligned by exponent."""
    verdict = _classify(p, q)
    return verdict if verdict is not None else LimitResult(
        "Inconclusive", max_order=min(p.mhigh, q.mhigh))


def _expand(e: Expr, n: int) -> LaurentPoly:
    try:
        return LaurentPoly.from_taylor(expand_taylor(e, n))
    except PoleAtZero:
        return expand_laurent(e, n)


def ratio_limit(f: Expr, g: Expr, order: Optional[int] = None) -> LimitResult:
    """Limit of f/g as x -> 0.

    Orders n, 2n, 4n, ... are tried up to 32 (or just n when n is larger)
    before the verdict is Inconclusive.
    """
    n = DEFAULT_ORDER if order is None else order
    if n < 1:
        raise ValueError("order must be positive")
    cap = max(n, MAX_ORDER)
    while True:
        try:
            verdict = _classify(_expand(f, n), _expand(g, n))
        except AllZeroDenominator:
            verdict = None
        if verdict is not None:
            return verdict
        if n >= cap:
            return LimitResult("Inconclusive", max_order=n)
        n = min(2 * n, cap)
