"""Guarded interval evaluation of expressions.

Evaluation runs at increasing working precision until the result is narrow
enough.  Each partial function checks its guard on the enclosure of its
argument; when the enclosure straddles the guard boundary, an exact pass
decides it if the argument is a known number of the form a + b*pi (this
covers rational functions of a rational point and the rational values of
trigonometric functions at rational multiples of pi).  Otherwise precision
is increased, and at the configured cap the guard is reported Uncertain.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .. import intervals as iv
from ..errors import DomainError, Uncertain
from ..intervals import Interval
from .ast import Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var

DIV_ZERO = "division by zero"
LOG_NONPOS = "log nonpositive"
ASIN_RANGE = "arcsin argument outside [-1, 1]"
ACOS_RANGE = "arccos argument outside [-1, 1]"
NEG_BASE = "negative base"
COS_ZERO = "cos zero"
SIN_ZERO = "sin zero"

ENV_MAX_PRECISION = "ANALYSIS_KERNEL_MAX_PRECISION"
DEFAULT_MAX_PRECISION = 4096


def max_precision() -> int:
    try:
        return max(16, int(os.environ.get(ENV_MAX_PRECISION, DEFAULT_MAX_PRECISION)))
    except ValueError:
        return DEFAULT_MAX_PRECISION


# --- exact values a + b*pi ------------------------------------------------------------------

@dataclass(frozen=True)
class PiLinear:
    """a + b*pi with b != 0 (hence irrational)."""
    a: Fraction
    b: Fraction


Exact = Union[Fraction, PiLinear, None]


def _pl(a, b) -> Exact:
    return Fraction(a) if b == 0 else PiLinear(Fraction(a), Fraction(b))


def _parts(v: Exact):
    return (v, Fraction(0)) if isinstance(v, Fraction) else (v.a, v.b)


# sin(k*pi/6) for k = 0..11, None where the value is irrational
_SIN_SIXTHS = [Fraction(0), Fraction(1, 2), None, Fraction(1), None, Fraction(1, 2),
               Fraction(0), Fraction(-1, 2), None, Fraction(-1), None, Fraction(-1, 2)]


def _sin_exact(v: Exact) -> Exact:
    if v is None:
        return None
    a, b = _parts(v)
    if a != 0:
        return None  # sin of a nonzero rational (plus b*pi) is irrational
    k = b * 6
    if k.denominator != 1:
        return None
    return _SIN_SIXTHS[int(k) % 12]


def _shift(v: Exact, db: Fraction) -> Exact:
    if v is None:
        return None
    a, b = _parts(v)
    return _pl(a, b + db)


def _exact_root(x: Fraction, a: Fraction) -> Optional[Fraction]:
    if x < 0 or (x == 0 and a < 0):
        return None
    if x == 0:
        return Fraction(0)
    p, q = a.numerator, a.denominator
    num, den = iv.iroot(x.numerator, q), iv.iroot(x.denominator, q)
    if num ** q != x.numerator or den ** q != x.denominator:
        return None
    return Fraction(num, den) ** p


def exact_value(e: Expr, x: Fraction) -> Exact:
    """e at the rational point x when it is rational or rational + rational*pi."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Pi):
        return PiLinear(Fraction(0), Fraction(1))
    if isinstance(e, (Add, Mul, Div)):
        l, r = exact_value(e.left, x), exact_value(e.right, x)
        if l is None or r is None:
            return None
        (la, lb), (ra, rb) = _parts(l), _parts(r)
        if isinstance(e, Add):
            return _pl(la + ra, lb + rb)
        if isinstance(e, Mul):
            if lb and rb:
                return None
            return _pl(la * ra, la * rb + lb * ra)
        if rb or ra == 0:
            return None
        return _pl(la / ra, lb / ra)
    if isinstance(e, PowInt):
        b = exact_value(e.base, x)
        if e.m == 0 and b is not None:
            return Fraction(1)
        if not isinstance(b, Fraction) or (b == 0 and e.m < 0):
            return None
        return b ** e.m
    if isinstance(e, PowRat):
        b = exact_value(e.base, x)
        return _exact_root(b, e.a) if isinstance(b, Fraction) else None
    if isinstance(e, Apply):
        u = exact_value(e.arg, x)
        fn = e.fn
        if u is None:
            return None
        if fn == Fn.EXP:
            return Fraction(1) if u == 0 else None
        if fn == Fn.LOG:
            return Fraction(0) if u == 1 else None
        if fn == Fn.SIN:
            return _sin_exact(u)
        if fn == Fn.COS:
            return _sin_exact(_shift(u, Fraction(1, 2)))
        if fn in (Fn.TAN, Fn.COT):
            s, c = _sin_exact(u), _sin_exact(_shift(u, Fraction(1, 2)))
            if fn == Fn.COT:
                s, c = c, s
            if s is None or c is None or c == 0:
                return None
            return s / c
        if fn == Fn.SQRT:
            return _exact_root(u, Fraction(1, 2)) if isinstance(u, Fraction) else None
        if not isinstance(u, Fraction):
            return None
        if fn in (Fn.ARCSIN, Fn.ARCCOS):
            table = {0: 0, Fraction(1, 2): Fraction(1, 6), 1: Fraction(1, 2)}
            if abs(u) not in table:
                return None
            b = table[abs(u)] * (1 if u >= 0 else -1)
            return _pl(0, b) if fn == Fn.ARCSIN else _pl(0, Fraction(1, 2) - b)
        if fn in (Fn.ARCTAN, Fn.ARCCOT):
            table = {0: 0, 1: Fraction(1, 4)}
            if abs(u) not in table:
                return None
            b = table[abs(u)] * (1 if u >= 0 else -1)
            return _pl(0, b) if fn == Fn.ARCTAN else _pl(0, Fraction(1, 2) - b)
    return None


def _trig_zero(u: Exact, cosine: bool) -> Optional[bool]:
    """Is sin(u) (or cos(u)) exactly zero?  None when u is unknown."""
    if u is None:
        return None
    a, b = _parts(u)
    if a != 0:
        return False  # rational + b*pi is never a multiple of pi/2 unless a = 0
    if cosine:
        b -= Fraction(1, 2)
    return b.denominator == 1


# --- interval evaluation -------------------------------------------------------------------

class _Straddle(Exception):
    def __init__(self, guard, path):
        super().__init__(guard)
        self.guard = guard
        self.path = path


class _Evaluator:
    def __init__(self, expr: Expr, x, w: int):
        self.expr = expr
        self.point = x if isinstance(x, Fraction) else None
        self.box = Interval.point(x) if isinstance(x, Fraction) else x
        self.w = w
        self.exact_cache = {}
        # derivative trees share subtrees heavily; cache successful values by node identity
        self.values = {}

    def exact(self, e: Expr, path) -> Exact:
        if self.point is None:
            return None
        if id(e) not in self.exact_cache:
            self.exact_cache[id(e)] = exact_value(e, self.point)
        return self.exact_cache[id(e)]

    def run(self) -> Interval:
        return self.ev(self.expr, ())

    def ev(self, e: Expr, path) -> Interval:
        v = self.values.get(id(e))
        if v is None:
            v = self.values[id(e)] = self._ev(e, path)
        return v

    def _ev(self, e: Expr, path) -> Interval:
        w = self.w
        if isinstance(e, Const):
            return Interval.point(e.value)
        if isinstance(e, Var):
            return self.box
        if isinstance(e, Pi):
            return iv.pi_const(w)
        if isinstance(e, Add):
            return iv.add(self.ev(e.left, path + (0,)), self.ev(e.right, path + (1,)), w)
        if isinstance(e, Mul):
            return iv.mul(self.ev(e.left, path + (0,)), self.ev(e.right, path + (1,)), w)
        if isinstance(e, Div):
            num = self.ev(e.left, path + (0,))
            den = self.nonzero(e.right, path + (1,), path, DIV_ZERO)
            return iv.div(num, den, w)
        if isinstance(e, PowInt):
            if e.m < 0:
                base = self.nonzero(e.base, path + (0,), path, DIV_ZERO)
            else:
                base = self.ev(e.base, path + (0,))
            return iv.powint(base, e.m, w)
        if isinstance(e, PowRat):
            return self.power(e.base, e.a, path)
        if isinstance(e, Apply):
            return self.apply(e, path)
        raise TypeError(f"not an expression: {e!r}")

    def _fail(self, guard, path, decided: Optional[bool]):
        """decided: True = violated, False = satisfied but unresolved, None = unknown."""
        if decided:
            raise DomainError(guard, path)
        raise _Straddle(guard, path)

    def nonzero(self, e: Expr, sub, path, guard) -> Interval:
        v = self.ev(e, sub)
        if v.lo > 0 or v.hi < 0:
            return v
        ex = self.exact(e, sub)
        if isinstance(ex, Fraction):
            if ex == 0:
                raise DomainError(guard, path)
            return Interval.point(ex)
        self._fail(guard, path, False if ex is not None else None)

    def power(self, base: Expr, a: Fraction, path) -> Interval:
        v = self.ev(base, path + (0,))
        strict = a < 0
        if v.lo > 0 or (v.lo == 0 and not strict):
            return iv.powrat(v, a, self.w)
        if v.hi < 0:
            raise DomainError(NEG_BASE, path)
        ex = self.exact(base, path + (0,))
        if isinstance(ex, Fraction):
            if ex < 0:
                raise DomainError(NEG_BASE, path)
            if ex == 0 and strict:
                raise DomainError(DIV_ZERO, path)
            return iv.powrat(Interval.point(ex), a, self.w)
        self._fail(NEG_BASE, path, False if ex is not None else None)

    def apply(self, e: Apply, path) -> Interval:
        w = self.w
        fn = e.fn
        sub = path + (0,)
        if fn == Fn.SQRT:
            return self.power(e.arg, Fraction(1, 2), path)
        u = self.ev(e.arg, sub)
        if fn == Fn.EXP:
            return iv.exp(u, w)
        if fn == Fn.SIN:
            return iv.sin(u, w)
        if fn == Fn.COS:
            return iv.cos(u, w)
        if fn == Fn.ARCTAN:
            return iv.atan(u, w)
        if fn == Fn.ARCCOT:
            return iv.acot(u, w)
        if fn == Fn.LOG:
            if u.lo > 0:
                return iv.log(u, w)
            if u.hi <= 0 and u.lo < u.hi or u.hi < 0:
                raise DomainError(LOG_NONPOS, path)
            ex = self.exact(e.arg, sub)
            if isinstance(ex, Fraction):
                if ex <= 0:
                    raise DomainError(LOG_NONPOS, path)
                return iv.log(Interval.point(ex), w)
            self._fail(LOG_NONPOS, path, False if ex is not None else None)
        if fn in (Fn.ARCSIN, Fn.ARCCOS):
            guard = ASIN_RANGE if fn == Fn.ARCSIN else ACOS_RANGE
            f = iv.asin if fn == Fn.ARCSIN else iv.acos
            if u.lo >= -1 and u.hi <= 1:
                return f(u, w)
            if u.lo > 1 or u.hi < -1:
                raise DomainError(guard, path)
            ex = self.exact(e.arg, sub)
            if isinstance(ex, Fraction):
                if abs(ex) > 1:
                    raise DomainError(guard, path)
                return f(Interval.point(ex), w)
            self._fail(guard, path, False if ex is not None else None)
        if fn in (Fn.TAN, Fn.COT):
            s, c = iv.sin(u, w + 4), iv.cos(u, w + 4)
            den, guard, cosine = (c, COS_ZERO, True) if fn == Fn.TAN else (s, SIN_ZERO, False)
            num = s if fn == Fn.TAN else c
            if den.lo > 0 or den.hi < 0:
                return iv.div(num, den, w)
            zero = _trig_zero(self.exact(e.arg, sub), cosine)
            self._fail(guard, path, zero)
        raise TypeError(f"unknown function {fn}")


def eval_guarded(e: Expr, point, precision_bits: int = 53) -> Interval:
    """Certified enclosure of e(point) of width <= 2^(2 - precision_bits).

    ``point`` may also be an Interval, in which case the result encloses the
    range of e over it (no width target, and no exact boundary decisions).
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    box = isinstance(point, Interval)
    if not box:
        point = Fraction(point)
    target = Fraction(1, 1 << (precision_bits - 2))
    cap = max_precision()
    w = min(precision_bits + 16, cap)
    while True:
        try:
            v = _Evaluator(e, point, w).run()
            if box or v.width <= target:
                return v
            pending = None
        except _Straddle as s:
            if box:
                raise Uncertain(s.guard, s.path, w)
            pending = s
        if w >= cap:
            if pending is not None:
                raise Uncertain(pending.guard, pending.path, w)
            raise Uncertain("target width", (), w)
        w = min(2 * w, cap)
