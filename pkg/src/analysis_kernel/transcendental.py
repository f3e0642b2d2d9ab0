"""Constructive transcendental numbers.

The Liouville number sum 10^(-n!) with its rational approximation
certificates, the integer lower bound behind Liouville's inequality, and an
effective version of Cantor's argument that produces the decimal digits of a
number avoiding the roots of every enumerated integer polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Sequence, Tuple

from .errors import BudgetExceeded, CertificateViolated, ZeroAtAlpha, ZeroValue

LIOUVILLE_MAX_M = 6


# --- the Liouville number ---------------------------------------------------------

def liouville_digit(n: int) -> int:
    """n-th decimal digit of sum 10^(-k!): 1 exactly when n is a factorial."""
    if n < 1:
        raise ValueError("digit positions start at 1")
    f, k = 1, 1
    while f < n:
        k += 1
        f *= k
    return 1 if f == n else 0


def liouville_digits(count: int) -> str:
    return "".join(str(liouville_digit(n)) for n in range(1, count + 1))


def _factorial(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def liouville_partial(m: int) -> Fraction:
    """sum_{n <= m} 10^(-n!)."""
    return sum((Fraction(1, 10 ** _factorial(n)) for n in range(1, m + 1)), Fraction(0))


def liouville_tail_upper(m: int) -> Fraction:
    """Exact upper bound on sum_{n > m} 10^(-n!).

    The terms n = m+1, m+2 are summed exactly; every later exponent n! is at
    least (m+3)! + (n - m - 3), so the rest is below 10^(-(m+3)!) * 10/9.
    """
    head = sum((Fraction(1, 10 ** _factorial(n)) for n in (m + 1, m + 2)), Fraction(0))
    return head + Fraction(10, 9 * 10 ** _factorial(m + 3))


class LiouvilleCertificate(NamedTuple):
    z: int
    q: int
    gap_bound: Fraction


def liouville_certificate(m: int) -> LiouvilleCertificate:
    """z/q = sum_{n<=m} 10^(-n!) with q = 10^(m!) and |lambda - z/q| < 2 q^(-m-1)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > LIOUVILLE_MAX_M:
        raise BudgetExceeded(f"q = 10^({m}!) is beyond the budget m <= {LIOUVILLE_MAX_M}")
    q = 10 ** _factorial(m)
    z = int(liouville_partial(m) * q)
    gap = Fraction(2, q ** (m + 1))
    if not liouville_tail_upper(m) < gap:
        raise CertificateViolated(f"tail of lambda beyond m = {m} exceeds 2 q^(-m-1)")
    return LiouvilleCertificate(z, q, gap)


# --- Liouville's inequality ---------------------------------------------------------

def _degree(p: Sequence[int]) -> int:
    d = len(p) - 1
    while d >= 0 and p[d] == 0:
        d -= 1
    return d


def poly_eval(p: Sequence[int], x) -> Fraction:
    """p(x) by Horner, coefficients lowest degree first."""
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def poly_rational_lower_bound(p: Sequence[int], x) -> Fraction:
    """|p(x)| for x = a/b, computed as the integer b^n |p(a/b)| >= 1 over b^n.

    Hence |p(x)| >= b^(-n) whenever p(x) != 0.
    """
    x = Fraction(x)
    n = max(_degree(p), 0)
    a, b = x.numerator, x.denominator
    scaled = sum(int(c) * a ** i * b ** (n - i) for i, c in enumerate(p[:n + 1]))
    if scaled == 0:
        raise ZeroValue(f"p({x}) = 0")
    value = Fraction(abs(scaled), b ** n)
    assert value >= Fraction(1, b ** n)
    return value


# --- effective Cantor -------------------------------------------------------------------

def _decimal_parts(alpha: Fraction):
    """(a, k) with alpha = a / 10^k and k minimal."""
    k = 0
    while (alpha * 10 ** k).denominator != 1:
        k += 1
        if k > 10 ** 6:
            raise ValueError(f"{alpha} is not a decimal fraction")
    return int(alpha * 10 ** k), k


def nonvanishing_radius(p: Sequence[int], alpha, k: int = None) -> int:
    """l = k n + b with b = (n+1)^2 max|c_i| (|a|+1)^n; p has no zero on [alpha, alpha + 10^-l].

    alpha = a/10^k; without k the shortest decimal representation is used.
    The conclusion is spot-checked at both endpoints and 8 interior points.
    """
    alpha = Fraction(alpha)
    if k is None:
        a, k = _decimal_parts(alpha)
    else:
        a = alpha * 10 ** k
        if a.denominator != 1:
            raise ValueError(f"{alpha} has no denominator 10^{k}")
        a = int(a)
    value = poly_eval(p, alpha)
    if value == 0:
        raise ZeroAtAlpha(f"p({alpha}) = 0")
    n = max(_degree(p), 0)
    b = (n + 1) ** 2 * max(abs(c) for c in p) * (abs(a) + 1) ** n
    l = k * n + b
    if l < 2000:  # endpoint spot check, skipped where 10^-l is too small to be useful
        width = Fraction(1, 10 ** l)
        for i in range(10):
            y = poly_eval(p, alpha + width * Fraction(i, 9))
            if y == 0 or (y > 0) != (value > 0):
                raise CertificateViolated(f"p changes sign on [alpha, alpha + 10^-{l}]",
                                          witness=alpha + width * Fraction(i, 9))
    return l


def enumerate_polynomials() -> Iterator[Tuple[int, ...]]:
    """All nonzero integer polynomials (lowest degree first), each exactly once.

    Ordered by size = degree + sum |c_i|, then by degree, then
    lexicographically on the coefficients from the leading one down.
    """
    size = 1
    while True:
        for d in range(0, size):
            budget = size - d
            batch = []
            for coeffs in _compositions(budget, d + 1):
                if coeffs[0] == 0:
                    continue  # leading coefficient
                batch.append(coeffs)
            for high_first in sorted(batch):
                yield tuple(reversed(high_first))
        size += 1


def _compositions(total: int, parts: int):
    """Signed integer vectors of the given length with sum |c_i| = total."""
    if parts == 1:
        yield (total,)
        if total:
            yield (-total,)
        return
    for first in range(-total, total + 1):
        for rest in _compositions(total - abs(first), parts - 1):
            yield (first,) + rest


@dataclass
class CantorStep:
    poly: Tuple[int, ...]
    j: int
    l: int
    alpha: Fraction
    k: int


@dataclass
class CantorState:
    """[alpha, alpha + 10^-k] avoids the roots of every processed polynomial."""
    m: int = 0
    alpha: Fraction = Fraction(0)
    k: int = 0
    polys: List[Tuple[int, ...]] = field(default_factory=list)
    trace: List[CantorStep] = field(default_factory=list)


def cantor_step(state: CantorState, p: Tuple[int, ...]) -> CantorStep:
    n = max(_degree(p), 0)
    k = state.k + 1
    while 10 ** (k - state.k) <= n:
        k += 1
    step = Fraction(1, 10 ** k)
    j = 0
    while poly_eval(p, state.alpha + j * step) == 0:
        j += 1  # at most n grid points are roots, and the grid has more than n
    point = state.alpha + j * step
    l = nonvanishing_radius(p, point)
    state.alpha = point
    state.k = max(l, k)
    state.m += 1
    state.polys.append(p)
    record = CantorStep(p, j, l, point, state.k)
    state.trace.append(record)
    return record


def decimal_digits(alpha: Fraction, count: int) -> List[int]:
    """First count digits after the decimal point of alpha in [0, 1)."""
    scaled = alpha * 10 ** count
    digits = str(scaled.numerator // scaled.denominator).zfill(count)
    return [int(c) for c in digits[-count:]] if count else []


MAX_CANTOR_DIGITS = 10 ** 6


def cantor_stream(max_polys: int, max_digits: int):
    """Process the first max_polys polynomials; return (digits, state).

    Digits at positions up to k never change in later steps, so at most
    min(max_digits, k) digits are returned.
    """
    if max_polys < 1 or max_digits < 1:
        raise ValueError("budgets must be positive")
    state = CantorState()
    for p in enumerate_polynomials():
        if state.m >= max_polys:
            break
        cantor_step(state, p)
    count = min(max_digits, state.k)
    if count > MAX_CANTOR_DIGITS:
        raise BudgetExceeded(f"{count} digits requested")
    return decimal_digits(state.alpha, count), state


def certify_state(state: CantorState) -> bool:
    """Every processed polynomial is nonzero at both ends of the final interval."""
    hi = state.alpha + Fraction(1, 10 ** state.k)
    return all(poly_eval(p, state.alpha) != 0 and poly_eval(p, hi) != 0 for p in state.polys)
