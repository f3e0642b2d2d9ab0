"""SEF / EF classification.

Simple elementary functions are built from constants, exp, log, sin and the
open-interval arcsine by +, *, / and composition.  The other primitives of
the grammar rewrite into these without changing the domain, except in two
situations that can add boundary points to a domain:

* ``arcsin(u)`` / ``arccos(u)`` where u reaches exactly +1 or -1;
* ``u^a`` with rational a > 0 where u reaches 0 outside a denominator.

An expression is SEF when neither situation can occur.  Proofs of "can
not occur" come from a conservative range analysis or, for rational
functions of x, from exact real-root counting.  Anything unproved is EF,
which is always a sound answer for this grammar.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .. import poly
from .ast import (Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var,
                  walk)


class FnClass(enum.Enum):
    SEF = "SEF"
    EF = "EF"
    NOT_EF = "NotEF"

    def __str__(self):
        return self.value


# --- conservative ranges ------------------------------------------------------------

@dataclass(frozen=True)
class Rng:
    """A set of reals containing every value of an expression; None = infinite end."""
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_open: bool = False
    hi_open: bool = False

    def excludes(self, v) -> bool:
        if self.lo is not None and (v < self.lo or (v == self.lo and self.lo_open)):
            return True
        if self.hi is not None and (v > self.hi or (v == self.hi and self.hi_open)):
            return True
        return False

    @property
    def nonneg(self) -> bool:
        return self.lo is not None and self.lo >= 0

    @property
    def nonpos(self) -> bool:
        return self.hi is not None and self.hi <= 0


ANY = Rng(None, None, True, True)
POSITIVE = Rng(Fraction(0), None, True, True)
NONNEG = Rng(Fraction(0), None, False, True)


def _point(c) -> Rng:
    return Rng(Fraction(c), Fraction(c))


def _radd(a: Rng, b: Rng) -> Rng:
    lo = None if a.lo is None or b.lo is None else a.lo + b.lo
    hi = None if a.hi is None or b.hi is None else a.hi + b.hi
    return Rng(lo, hi, a.lo_open or b.lo_open, a.hi_open or b.hi_open)


def _rneg(a: Rng) -> Rng:
    return Rng(None if a.hi is None else -a.hi, None if a.lo is None else -a.lo,
               a.hi_open, a.lo_open)


def _mul_nonneg(a: Rng, b: Rng) -> Rng:
    lo = a.lo * b.lo
    if lo > 0:
        lo_open = a.lo_open or b.lo_open
    else:
        lo_open = not ((a.lo == 0 and not a.lo_open) or (b.lo == 0 and not b.lo_open))
    if a.hi == 0 or b.hi == 0:
        return Rng(Fraction(0), Fraction(0))
    if a.hi is None or b.hi is None:
        return Rng(lo, None, lo_open, True)
    return Rng(lo, a.hi * b.hi, lo_open, a.hi_open or b.hi_open)


def _rmul(a: Rng, b: Rng) -> Rng:
    if a.nonpos and not a.nonneg:
        return _rneg(_rmul(_rneg(a), b))
    if b.nonpos and not b.nonneg:
        return _rneg(_rmul(a, _rneg(b)))
    if a.nonneg and b.nonneg:
        return _mul_nonneg(a, b)
    if None in (a.lo, a.hi, b.lo, b.hi):
        return ANY
    ps = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi]
    return Rng(min(ps), max(ps))


def _rsquare(a: Rng) -> Rng:
    if a.nonneg:
        return _mul_nonneg(a, a)
    if a.nonpos:
        return _mul_nonneg(_rneg(a), _rneg(a))
    hi = None if a.lo is None or a.hi is None else max(a.lo * a.lo, a.hi * a.hi)
    return Rng(Fraction(0), hi, False, hi is None)


def _rrecip(a: Rng) -> Rng:
    if a.nonpos and not a.nonneg:
        return _rneg(_rrecip(_rneg(a)))
    if not (a.nonneg and a.excludes(0)):
        return ANY
    lo = Fraction(0) if a.hi is None else 1 / a.hi
    lo_open = a.hi is None or a.hi_open
    if a.lo == 0:
        return Rng(lo, None, lo_open, True)
    return Rng(lo, 1 / a.lo, lo_open, a.lo_open)


def value_range(e: Expr) -> Rng:
    """A conservative enclosure of e's values over its domain."""
    if isinstance(e, Const):
        return _point(e.value)
    if isinstance(e, Pi):
        return Rng(Fraction(157, 50), Fraction(22, 7))
    if isinstance(e, Var):
        return ANY
    if isinstance(e, Add):
        return _radd(value_range(e.left), value_range(e.right))
    if isinstance(e, Mul):
        if e.left == e.right:
            return _rsquare(value_range(e.left))
        return _rmul(value_range(e.left), value_range(e.right))
    if isinstance(e, Div):
        return _rmul(value_range(e.left), _rrecip(value_range(e.right)))
    if isinstance(e, PowInt):
        b = value_range(e.base)
        m = e.m
        if m == 0:
            return _point(1)
        if m < 0:
            return _rrecip(value_range(PowInt(e.base, -m)))
        r = _rsquare(b) if m % 2 == 0 else b
        for _ in range((m - 1) // 2 if m % 2 else m // 2 - 1):
            r = _rmul(r, _rsquare(b))
        return r
    if isinstance(e, PowRat):
        b = value_range(e.base)
        if e.a < 0 or b.excludes(0):
            return POSITIVE
        return NONNEG
    if isinstance(e, Apply):
        fn = e.fn
        if fn == Fn.EXP:
            return POSITIVE
        if fn in (Fn.SIN, Fn.COS):
            return Rng(Fraction(-1), Fraction(1))
        if fn == Fn.ARCTAN:
            return Rng(Fraction(-8, 5), Fraction(8, 5), True, True)
        if fn == Fn.ARCSIN:
            return Rng(Fraction(-8, 5), Fraction(8, 5))
        if fn == Fn.ARCCOS:
            return Rng(Fraction(0), Fraction(16, 5))
        if fn == Fn.ARCCOT:
            return Rng(Fraction(0), Fraction(16, 5), True, True)
        if fn == Fn.SQRT:
            return value_range(PowRat(e.arg, Fraction(1, 2)))
        return ANY
    raise TypeError(f"not an expression: {e!r}")


# --- exact rational functions -----------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    num: list
    den: list
    poles: list  # polynomials whose real roots lie outside the domain


def as_ratfunc(e: Expr) -> Optional[RatFunc]:
    """Numerator/denominator polynomials when e is a rational function of x."""
    if isinstance(e, Const):
        return RatFunc(poly.trim([e.value]), [Fraction(1)], [])
    if isinstance(e, Var):
        return RatFunc([Fraction(0), Fraction(1)], [Fraction(1)], [])
    if isinstance(e, (Add, Mul, Div)):
        a, b = as_ratfunc(e.left), as_ratfunc(e.right)
        if a is None or b is None:
            return None
        poles = a.poles + b.poles
        if isinstance(e, Add):
            return RatFunc(poly.padd(poly.pmul(a.num, b.den), poly.pmul(b.num, a.den)),
                           poly.pmul(a.den, b.den), poles)
        if isinstance(e, Mul):
            return RatFunc(poly.pmul(a.num, b.num), poly.pmul(a.den, b.den), poles)
        if not b.num:
            return None  # division by the zero function: empty domain
        return RatFunc(poly.pmul(a.num, b.den), poly.pmul(a.den, b.num), poles + [b.num])
    if isinstance(e, PowInt):
        a = as_ratfunc(e.base)
        if a is None:
            return None
        m = e.m
        if m >= 0:
            return RatFunc(poly.ppow(a.num, m) if m else [Fraction(1)], poly.ppow(a.den, m), a.poles)
        if not a.num:
            return None
        return RatFunc(poly.ppow(a.den, -m), poly.ppow(a.num, -m), a.poles + [a.num])
    return None


def _attains(r: RatFunc, value: Fraction) -> bool:
    """Is r(x) = value for some x in the domain of r?"""
    target = poly.psub(r.num, poly.pscale(r.den, value))
    return poly.has_real_root_outside(target, r.poles + [r.den])


def never_zero(e: Expr) -> bool:
    if value_range(e).excludes(0):
        return True
    r = as_ratfunc(e)
    return r is not None and not _attains(r, Fraction(0))


def never_unit(e: Expr) -> bool:
    """True when |e| = 1 is impossible on e's domain."""
    rng = value_range(e)
    if rng.excludes(1) and rng.excludes(-1):
        return True
    r = as_ratfunc(e)
    return r is not None and not _attains(r, Fraction(1)) and not _attains(r, Fraction(-1))


# --- classification -------------------------------------------------------------------------

def _obstructions(e: Expr, in_den: bool, path: tuple, out: list):
    """Collect (path, reason) for every node that blocks SEF membership.

    ``in_den`` is True when a zero of e would make an enclosing denominator
    vanish, so a root-type boundary point at such a zero is excluded anyway.
    """
    if isinstance(e, (Const, Pi, Var)):
        return
    if isinstance(e, Add):
        _obstructions(e.left, False, path + (0,), out)
        _obstructions(e.right, False, path + (1,), out)
    elif isinstance(e, Mul):
        _obstructions(e.left, in_den, path + (0,), out)
        _obstructions(e.right, in_den, path + (1,), out)
    elif isinstance(e, Div):
        _obstructions(e.left, in_den, path + (0,), out)
        _obstructions(e.right, True, path + (1,), out)
    elif isinstance(e, PowInt):
        _obstructions(e.base, in_den if e.m > 0 else e.m < 0, path + (0,), out)
    elif isinstance(e, PowRat) or (isinstance(e, Apply) and e.fn == Fn.SQRT):
        base = e.base if isinstance(e, PowRat) else e.arg
        a = e.a if isinstance(e, PowRat) else Fraction(1, 2)
        if a > 0 and not in_den and not never_zero(base):
            out.append((path, "root of a base that may vanish"))
        _obstructions(base, True if a < 0 else in_den, path + (0,), out)
    elif isinstance(e, Apply):
        if e.fn in (Fn.ARCSIN, Fn.ARCCOS) and not never_unit(e.arg):
            out.append((path, f"{e.fn.value} argument may reach +-1"))
        _obstructions(e.arg, False, path + (0,), out)
    else:
        raise TypeError(f"not an expression: {e!r}")


def obstructions(e: Expr) -> list:
    out = []
    _obstructions(e, False, (), out)
    return out


def classify(e: Expr) -> FnClass:
    """SEF when proved, otherwise EF (every tree of the grammar is elementary)."""
    return FnClass.EF if obstructions(e) else FnClass.SEF


# --- rewrite into the generators ------------------------------------------------------------

def _half_pi() -> Expr:
    return Div(Pi(), Const(2))


def _exp_pow(base: Expr, a: Fraction) -> Expr:
    return Apply(Fn.EXP, Mul(Const(a), Apply(Fn.LOG, base)))


def _gen(e: Expr) -> Expr:
    if isinstance(e, (Const, Pi, Var)):
        return e
    if isinstance(e, (Add, Mul, Div)):
        return type(e)(_gen(e.left), _gen(e.right))
    if isinstance(e, PowInt):
        b = _gen(e.base)
        if e.m == 0:
            return Add(Const(1), Mul(Const(0), b))
        prod = b
        for _ in range(abs(e.m) - 1):
            prod = Mul(prod, b)
        return prod if e.m > 0 else Div(Const(1), prod)
    if isinstance(e, PowRat):
        return _exp_pow(_gen(e.base), e.a)
    u = _gen(e.arg)
    fn = e.fn
    if fn in (Fn.EXP, Fn.LOG, Fn.SIN, Fn.ARCSIN):
        return Apply(fn, u)
    if fn == Fn.COS:
        return Apply(Fn.SIN, Add(u, _half_pi()))
    if fn == Fn.TAN:
        return Div(Apply(Fn.SIN, u), Apply(Fn.SIN, Add(u, _half_pi())))
    if fn == Fn.COT:
        return Div(Apply(Fn.SIN, Add(u, _half_pi())), Apply(Fn.SIN, u))
    if fn == Fn.ARCCOS:
        return Add(_half_pi(), Mul(Const(-1), Apply(Fn.ARCSIN, u)))
    if fn == Fn.ARCTAN:
        return _arctan_gen(u)
    if fn == Fn.ARCCOT:
        return Add(_half_pi(), Mul(Const(-1), _arctan_gen(u)))
    if fn == Fn.SQRT:
        return _exp_pow(u, Fraction(1, 2))
    raise TypeError(f"unknown function {fn}")


def _arctan_gen(u: Expr) -> Expr:
    return Apply(Fn.ARCSIN, Div(u, _exp_pow(Add(Const(1), Mul(u, u)), Fraction(1, 2))))


GENERATORS = frozenset({Fn.EXP, Fn.LOG, Fn.SIN, Fn.ARCSIN})


def to_generators(e: Expr) -> Expr:
    """Rewrite an SEF expression over {constants, x, exp, log, sin, arcsin} with + * /.

    The rewrite keeps the domain only for SEF inputs, so EF inputs are rejected.
    """
    if classify(e) != FnClass.SEF:
        raise ValueError("only SEF expressions have a domain-preserving generator form")
    return _gen(e)


def uses_only_generators(e: Expr) -> bool:
    for _, n in walk(e):
        if isinstance(n, (PowInt, PowRat)):
            return False
        if isinstance(n, Apply) and n.fn not in GENERATORS:
            return False
    return True
