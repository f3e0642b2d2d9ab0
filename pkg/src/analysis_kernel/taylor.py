"""Truncated Taylor and Laurent polynomials with exact rational coefficients.

A ``TaylorPoly`` of order n stores a_0..a_n in powers of (x - center); the
order is explicit and arithmetic between different orders is an error.
Multiplication counts can be observed through an ``OpCounter``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (AllZero, CenterIncompatible, CenterMismatch, OrderMismatch,
                     UnboundedDerivatives, ZeroConstantTerm)
from .numbers import as_rational, format_rational

ZERO = Fraction(0)
ONE = Fraction(1)


class OpCounter:
    """Counts coefficient multiplications performed by the routines below."""

    def __init__(self):
        self.mults = 0

    def __repr__(self):
        return f"OpCounter(mults={self.mults})"


def _truncated_mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int,
                   counter: Optional[OpCounter] = None) -> list:
    out = [ZERO] * (n + 1)
    for i, ai in enumerate(a[:n + 1]):
        if not ai:
            continue
        for j in range(min(len(b), n + 1 - i)):
            out[i + j] += ai * b[j]
        if counter is not None:
            counter.mults += min(len(b), n + 1 - i)
    return out


@dataclass(frozen=True)
class TaylorPoly:
    center: Fraction
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a Taylor polynomial has at least one coefficient")
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs, center=0) -> "TaylorPoly":
        return cls(as_rational(center), tuple(as_rational(c) for c in coeffs))

    @classmethod
    def constant(cls, c, order: int, center=0) -> "TaylorPoly":
        return cls(Fraction(center), (Fraction(c),) + (ZERO,) * order)

    @classmethod
    def identity(cls, order: int) -> "TaylorPoly":
        """The polynomial x at center 0."""
        return cls(ZERO, tuple(ONE if i == 1 else ZERO for i in range(order + 1)))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        t = Fraction(x) - self.center
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        return tp_arith("add", self, other)

    def __mul__(self, other):
        return tp_arith("mul", self, other)

    def __str__(self):
        return render_taylor(self)


def _check(p: TaylorPoly, q: TaylorPoly):
    if p.center != q.center:
        raise CenterMismatch(f"centers {p.center} and {q.center} differ")
    if p.order != q.order:
        raise OrderMismatch(f"orders {p.order} and {q.order} differ")


def tp_arith(op: str, p: TaylorPoly, q: TaylorPoly,
             counter: Optional[OpCounter] = None) -> TaylorPoly:
    _check(p, q)
    if op == "add":
        return TaylorPoly(p.center, tuple(a + b for a, b in zip(p.coeffs, q.coeffs)))
    if op == "mul":
        return TaylorPoly(p.center, tuple(_truncated_mul(p.coeffs, q.coeffs, p.order, counter)))
    raise ValueError(f"unknown operation {op!r}")


def tp_scale(p: TaylorPoly, c) -> TaylorPoly:
    c = Fraction(c)
    return TaylorPoly(p.center, tuple(c * a for a in p.coeffs))


def tp_reciprocal(p: TaylorPoly, method: str = "powersum",
                  counter: Optional[OpCounter] = None) -> TaylorPoly:
    """1/p mod x^{n+1}.

    The default evaluates (1/a0) * sum_{k<=n} (1 - p/a0)^k; ``method="newton"``
    doubles the precision of y <- y(2 - p y) and gives the identical result.
    """
    a0 = p.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("constant term is 0; use lp_reciprocal")
    n = p.order
    if method == "newton":
        return TaylorPoly(p.center, tuple(_newton_reciprocal(p.coeffs, n, counter)))
    if method != "powersum":
        raise ValueError(f"unknown method {method!r}")
    r = [ZERO] + [-c / a0 for c in p.coeffs[1:]]
    if counter is not None:
        counter.mults += n
    total = [ONE] + [ZERO] * n
    power = list(total)
    for _ in range(n):
        power = _truncated_mul(power, r, n, counter)
        total = [s + t for s, t in zip(total, power)]
    inv = 1 / a0
    if counter is not None:
        counter.mults += n + 1
    return TaylorPoly(p.center, tuple(inv * c for c in total))


def _newton_reciprocal(a, n, counter):
    y = [1 / a[0]]
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        py = _truncated_mul(a, y, prec - 1, counter)
        corr = [-c for c in py]
        corr[0] += 2
        y = _truncated_mul(y, corr, prec - 1, counter)
    return y + [ZERO] * (n + 1 - len(y))


def tp_compose(p: TaylorPoly, q: TaylorPoly,
               counter: Optional[OpCounter] = None) -> TaylorPoly:
    """p(q(x)) mod x^{n+1}, where p is expanded at q's constant term."""
    if p.order != q.order:
        raise OrderMismatch(f"orders {p.order} and {q.order} differ")
    if q.coeffs[0] != p.center:
        raise CenterIncompatible(
            f"inner constant term {q.coeffs[0]} differs from outer center {p.center}")
    n = p.order
    shifted = [ZERO] + list(q.coeffs[1:])  # q - b, no constant term
    total = [p.coeffs[0]] + [ZERO] * n
    power = [ONE] + [ZERO] * n
    for k in range(1, n + 1):
        power = _truncated_mul(power, shifted, n, counter)
        ak = p.coeffs[k]
        if ak:
            total = [s + ak * t for s, t in zip(total, power)]
            if counter is not None:
                counter.mults += n + 1
    return TaylorPoly(q.center, tuple(total))


def tp_shift_center(p: TaylorPoly, new_center) -> TaylorPoly:
    """Re-express p in powers of (x - new_center)."""
    b = Fraction(new_center) - p.center
    n = p.order
    a = p.coeffs
    out = []
    for i in range(n + 1):
        out.append(sum((a[k + i] * math.comb(k + i, i) * b ** k for k in range(n - i + 1)), ZERO))
    return TaylorPoly(Fraction(new_center), tuple(out))


def tp_calculus(direction: str, p: TaylorPoly, constant_term=0) -> TaylorPoly:
    """Derivative (order n -> n-1) or antiderivative (order n -> n+1).

    The derivative of an order-0 polynomial is the order-0 zero polynomial.
    """
    if direction == "derive":
        if p.order == 0:
            return TaylorPoly(p.center, (ZERO,))
        return TaylorPoly(p.center, tuple((j + 1) * p.coeffs[j + 1] for j in range(p.order)))
    if direction == "antiderive":
        c = as_rational(constant_term)
        return TaylorPoly(p.center, (c,) + tuple(a / (j + 1) for j, a in enumerate(p.coeffs)))
    raise ValueError(f"unknown direction {direction!r}")


# --- base functions --------------------------------------------------------------

@dataclass(frozen=True)
class BaseFn:
    tag: str
    a: Optional[Fraction] = None

    def __str__(self):
        return f"PowA({format_rational(self.a)})" if self.tag == "PowA" else self.tag


EXP = BaseFn("Exp")
SIN = BaseFn("Sin")
COS = BaseFn("Cos")
LOG1P = BaseFn("Log1p")
LOGGEOM = BaseFn("LogGeom")
ARCTAN = BaseFn("Arctan")
ARCSIN = BaseFn("Arcsin")
GEOMETRIC = BaseFn("Geometric")


def PowA(a) -> BaseFn:
    return BaseFn("PowA", as_rational(a))


def gen_binomial(a: Fraction, j: int) -> Fraction:
    """binom(a, j) = a (a-1) ... (a-j+1) / j! for rational a."""
    out = ONE
    for i in range(j):
        out = out * (a - i) / (i + 1)
    return out


def _maclaurin_coeff(f: BaseFn, j: int) -> Fraction:
    tag = f.tag
    if tag == "Exp":
        return Fraction(1, math.factorial(j))
    if tag == "Sin":
        return ZERO if j % 2 == 0 else Fraction((-1) ** (j // 2), math.factorial(j))
    if tag == "Cos":
        return ZERO if j % 2 else Fraction((-1) ** (j // 2), math.factorial(j))
    if tag == "Log1p":
        return ZERO if j == 0 else Fraction((-1) ** (j - 1), j)
    if tag == "LogGeom":
        return ZERO if j == 0 else Fraction(1, j)
    if tag == "PowA":
        return gen_binomial(f.a, j)
    if tag == "Arctan":
        return ZERO if j % 2 == 0 else Fraction((-1) ** (j // 2), j)
    if tag == "Arcsin":
        if j % 2 == 0:
            return ZERO
        k = j // 2
        return gen_binomial(Fraction(2 * k - 1, 2), k) / (2 * k + 1)
    if tag == "Geometric":
        return ONE
    raise ValueError(f"unknown base function {tag!r}")


def maclaurin(f: BaseFn, n: int) -> TaylorPoly:
    if n < 0:
        raise ValueError("order must be nonnegative")
    return TaylorPoly(ZERO, tuple(_maclaurin_coeff(f, j) for j in range(n + 1)))


def lagrange_remainder_bound(f: BaseFn, n: int, x) -> Fraction:
    """B with |f(x) - T_n(x)| <= B, from |f^{(n+1)}| <= M on [0, x]."""
    x = as_rational(x)
    if f.tag in ("Sin", "Cos"):
        m = ONE
    elif f.tag == "Exp":
        # e^c <= e^ceil(x) <= 3^ceil(x) for c between 0 and x
        m = Fraction(3) ** max(0, math.ceil(x))
    else:
        raise UnboundedDerivatives(f"no global derivative bound for {f}")
    return m * abs(x) ** (n + 1) / math.factorial(n + 1)


# --- Laurent polynomials -----------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    center: Fraction
    mlow: int
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a Laurent polynomial has at least one coefficient")
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, mlow: int, coeffs, center=0) -> "LaurentPoly":
        return cls(as_rational(center), mlow, tuple(as_rational(c) for c in coeffs))

    @classmethod
    def from_taylor(cls, p: TaylorPoly) -> "LaurentPoly":
        return cls(p.center, 0, p.coeffs)

    @property
    def mhigh(self) -> int:
        return self.mlow + len(self.coeffs) - 1

    def coeff(self, m: int) -> Fraction:
        if self.mlow <= m <= self.mhigh:
            return self.coeffs[m - self.mlow]
        if m < self.mlow:
            return ZERO
        raise IndexError(f"exponent {m} beyond the known order {self.mhigh}")

    def valuation(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if c:
                return self.mlow + i
        return None

    def __str__(self):
        return render_laurent(self)


def lp_reciprocal(p: LaurentPoly, method: str = "powersum",
                  counter: Optional[OpCounter] = None) -> LaurentPoly:
    """1/p with exponents [-l, mhigh - 2l], l the valuation of p."""
    l = p.valuation()
    if l is None:
        raise AllZero("every coefficient is 0")
    lead = p.coeff(l)
    n = p.mhigh - l
    unit = TaylorPoly(ZERO, tuple(p.coeff(l + j) / lead for j in range(n + 1)))
    inv = tp_reciprocal(unit, method, counter)
    return LaurentPoly(p.center, -l, tuple(c / lead for c in inv.coeffs))


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.center != q.center:
        raise CenterMismatch("centers differ")
    lo, hi = min(p.mlow, q.mlow), min(p.mhigh, q.mhigh)
    lo = min(lo, hi)
    return LaurentPoly(p.center, lo, tuple(p.coeff(m) + q.coeff(m) for m in range(lo, hi + 1)))


def lp_scale(p: LaurentPoly, c) -> LaurentPoly:
    c = Fraction(c)
    return LaurentPoly(p.center, p.mlow, tuple(c * a for a in p.coeffs))


def lp_mul(p: LaurentPoly, q: LaurentPoly, counter: Optional[OpCounter] = None) -> LaurentPoly:
    """Product, known through exponent min(hp + vq, hq + vp)."""
    if p.center != q.center:
        raise CenterMismatch("centers differ")
    vp = p.valuation()
    vq = q.valuation()
    vp = p.mhigh + 1 if vp is None else vp
    vq = q.mhigh + 1 if vq is None else vq
    hi = min(p.mhigh + vq, q.mhigh + vp)
    lo = min(p.mlow + q.mlow, hi)
    out = [ZERO] * (hi - lo + 1)
    for i, a in enumerate(p.coeffs):
        if not a:
            continue
        for j, b in enumerate(q.coeffs):
            m = p.mlow + i + q.mlow + j
            if m > hi:
                break
            out[m - lo] += a * b
            if counter is not None:
                counter.mults += 1
    return LaurentPoly(p.center, lo, tuple(out))


def lp_to_taylor(p: LaurentPoly, order: Optional[int] = None) -> TaylorPoly:
    """Drop to a TaylorPoly when no negative exponent carries a nonzero coefficient."""
    v = p.valuation()
    if v is not None and v < 0:
        raise ValueError("Laurent polynomial has a pole")
    n = p.mhigh if order is None else order
    if n > p.mhigh:
        raise OrderMismatch(f"known only through order {p.mhigh}")
    return TaylorPoly(p.center, tuple(p.coeff(m) if m >= p.mlow else ZERO for m in range(n + 1)))


# --- text form -------------------------------------------------------------------

def _power_text(center: Fraction, m: int) -> str:
    if center == 0:
        base = "x"
    else:
        base = f"(x - {format_rational(center)})" if center > 0 else f"(x + {format_rational(-center)})"
    if m == 1:
        return base
    return f"{base}^{m}" if m > 0 else f"{base}^({m})"


def _render_terms(center: Fraction, items) -> str:
    parts = []
    for m, c in items:
        if c == 0 and (m != 0 or parts):
            continue
        mag = abs(c)
        if m == 0:
            body = format_rational(mag)
        elif mag == 1:
            body = _power_text(center, m)
        else:
            body = f"{format_rational(mag)}*{_power_text(center, m)}"
        if not parts:
            parts.append(body if c >= 0 else "-" + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def render_taylor(p: TaylorPoly) -> str:
    """"a0 + a1*(x - b) + ..." with exact coefficients; zero terms omitted except a0."""
    return _render_terms(p.center, enumerate(p.coeffs))


def render_laurent(p: LaurentPoly) -> str:
    items = [(p.mlow + i, c) for i, c in enumerate(p.coeffs)]
    if not any(c for _, c in items):
        return "0"
    return _render_terms(p.center, [(m, c) for m, c in items if c])


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+(?:/\d+)?)\s*(\*)?\s*)?
        (?:(x|\(\s*x\s*([+-])\s*(\d+(?:/\d+)?)\s*\))(?:\s*\^\s*(?:(\d+)|\(\s*(-?\d+)\s*\)|(-\d+)))?)?
        \s*""", re.X)


def _parse_terms(text: str):
    pos = 0
    center = None
    terms = {}
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near offset {pos}: {text!r}")
        sign, coef, star, var, csign, cval, e1, e2, e3 = m.groups()
        if not first and sign is None:
            raise ValueError(f"missing operator near offset {pos}")
        if coef is None and var is None:
            raise ValueError(f"empty term near offset {pos}")
        if star and var is None:
            raise ValueError(f"dangling '*' near offset {pos}")
        if coef is not None and var is not None and not star:
            raise ValueError(f"missing '*' near offset {pos}")
        c = as_rational(coef) if coef else ONE
        if sign == "-":
            c = -c
        exp = 0
        if var is not None:
            b = ZERO
            if cval is not None:
                b = as_rational(cval) * (1 if csign == "-" else -1)
            if center is not None and center != b:
                raise CenterMismatch("terms use different centers")
            center = b
            exp = int(e1 or e2 or e3 or 1)
        terms[exp] = terms.get(exp, ZERO) + c
        first = False
        pos = m.end()
    return (center or ZERO), terms


def parse_taylor(text: str, order: Optional[int] = None) -> TaylorPoly:
    """Inverse of render_taylor; ``order`` defaults to the largest exponent shown."""
    center, terms = _parse_terms(text)
    if any(e < 0 for e in terms):
        raise ValueError("negative exponent in a Taylor polynomial")
    top = max(terms) if terms else 0
    n = top if order is None else order
    if n < top:
        raise OrderMismatch(f"term of degree {top} exceeds order {n}")
    return TaylorPoly(center, tuple(terms.get(j, ZERO) for j in range(n + 1)))


def parse_laurent(text: str, mlow: Optional[int] = None, mhigh: Optional[int] = None) -> LaurentPoly:
    center, terms = _parse_terms(text)
    lo = min(terms) if mlow is None else mlow
    hi = max(terms) if mhigh is None else mhigh
    if any(e < lo or e > hi for e in terms if terms[e]):
        raise ValueError("term outside the requested exponent range")
    return LaurentPoly(center, lo, tuple(terms.get(j, ZERO) for j in range(lo, hi + 1)))
