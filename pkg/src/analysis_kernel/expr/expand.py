"""Exact Taylor (and Laurent) expansion of expressions at 0.

Every node is expanded recursively and combined with the truncated
operations of the taylor module: sums and products directly, quotients
through the reciprocal, and function applications by composing a Maclaurin
polynomial with the inner expansion shifted to constant term 0.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import AllZero, AllZeroDenominator, PoleAtZero, UnsupportedExpansionPoint
from ..intervals import iroot
from ..taylor import (ARCSIN, ARCTAN, COS, EXP, LOG1P, SIN, LaurentPoly, PowA, TaylorPoly,
                      lp_add, lp_mul, lp_reciprocal, lp_to_taylor, maclaurin, tp_arith,
                      tp_compose, tp_reciprocal)
from .ast import Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var

ZERO = Fraction(0)


def _rational_power(c: Fraction, a: Fraction):
    """c^a when it is rational (c > 0), else None."""
    q = a.denominator
    num, den = iroot(c.numerator, q), iroot(c.denominator, q)
    if num ** q != c.numerator or den ** q != c.denominator:
        return None
    return Fraction(num, den) ** a.numerator


def _shifted(u: TaylorPoly, c: Fraction) -> TaylorPoly:
    return TaylorPoly(u.center, (u.coeffs[0] - c,) + u.coeffs[1:])


def _compose(f, u: TaylorPoly) -> TaylorPoly:
    return tp_compose(maclaurin(f, u.order), u)


def _power(u: TaylorPoly, m: int) -> TaylorPoly:
    out = TaylorPoly.constant(1, u.order)
    base = u
    while m:
        if m & 1:
            out = tp_arith("mul", out, base)
        m >>= 1
        if m:
            base = tp_arith("mul", base, base)
    return out


def _powrat(u: TaylorPoly, a: Fraction, path) -> TaylorPoly:
    c = u.coeffs[0]
    if c <= 0:
        raise UnsupportedExpansionPoint(
            f"power with exponent {a} needs a positive base at 0, got {c}", path)
    ca = _rational_power(c, a)
    if ca is None:
        raise UnsupportedExpansionPoint(f"{c}^({a}) is irrational", path)
    # u^a = c^a (1 + (u/c - 1))^a
    inner = TaylorPoly(u.center, tuple(x / c for x in u.coeffs))
    out = _compose(PowA(a), _shifted(inner, Fraction(1)))
    return TaylorPoly(u.center, tuple(ca * x for x in out.coeffs))


def _need_constant(u: TaylorPoly, c, fn: Fn, path):
    if u.coeffs[0] != c:
        raise UnsupportedExpansionPoint(
            f"{fn.value} needs inner constant term {c}, got {u.coeffs[0]}", path)


def _apply(fn: Fn, u: TaylorPoly, path) -> TaylorPoly:
    """fn(u) for a Taylor expansion u of the argument."""
    if fn in (Fn.EXP, Fn.SIN, Fn.COS, Fn.ARCTAN, Fn.ARCSIN):
        _need_constant(u, ZERO, fn, path)
        base = {Fn.EXP: EXP, Fn.SIN: SIN, Fn.COS: COS, Fn.ARCTAN: ARCTAN, Fn.ARCSIN: ARCSIN}[fn]
        return _compose(base, u)
    if fn == Fn.LOG:
        _need_constant(u, Fraction(1), fn, path)
        return _compose(LOG1P, _shifted(u, Fraction(1)))
    if fn == Fn.SQRT:
        return _powrat(u, Fraction(1, 2), path)
    if fn == Fn.TAN:
        _need_constant(u, ZERO, fn, path)
        return tp_arith("mul", _compose(SIN, u), tp_reciprocal(_compose(COS, u)))
    if fn == Fn.COT:
        if u.coeffs[0] == 0:
            raise PoleAtZero(path)
        raise UnsupportedExpansionPoint(f"cot needs inner constant term 0, got {u.coeffs[0]}", path)
    raise UnsupportedExpansionPoint(f"{fn.value} has an irrational value at the expansion point", path)


def _taylor(e: Expr, n: int, path) -> TaylorPoly:
    if isinstance(e, Const):
        return TaylorPoly.constant(e.value, n)
    if isinstance(e, Var):
        return TaylorPoly.identity(n)
    if isinstance(e, Pi):
        raise UnsupportedExpansionPoint("pi is not rational", path)
    if isinstance(e, (Add, Mul)):
        l = _taylor(e.left, n, path + (0,))
        r = _taylor(e.right, n, path + (1,))
        return tp_arith("add" if isinstance(e, Add) else "mul", l, r)
    if isinstance(e, Div):
        num = _taylor(e.left, n, path + (0,))
        den = _taylor(e.right, n, path + (1,))
        if den.coeffs[0] == 0:
            raise PoleAtZero(path)
        return tp_arith("mul", num, tp_reciprocal(den))
    if isinstance(e, PowInt):
        u = _taylor(e.base, n, path + (0,))
        if e.m < 0:
            if u.coeffs[0] == 0:
                raise PoleAtZero(path)
            u = tp_reciprocal(u)
        return _power(u, abs(e.m))
    if isinstance(e, PowRat):
        return _powrat(_taylor(e.base, n, path + (0,)), e.a, path)
    if isinstance(e, Apply):
        return _apply(e.fn, _taylor(e.arg, n, path + (0,)), path)
    raise TypeError(f"not an expression: {e!r}")


def expand_taylor(e: Expr, n: int) -> TaylorPoly:
    """Exact Taylor polynomial of e at 0 of order n.

    Raises PoleAtZero when a denominator vanishes at 0 (use expand_laurent)
    and UnsupportedExpansionPoint when an inner value is not one where the
    Maclaurin coefficients of the outer function are rational.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    return _taylor(e, n, ())


# --- Laurent expansion ------------------------------------------------------------

def _lp_power(u: LaurentPoly, m: int) -> LaurentPoly:
    if m < 0:
        u = lp_reciprocal(u)
        m = -m
    out = LaurentPoly(u.center, 0, (Fraction(1),) + (ZERO,) * max(0, u.mhigh - u.mlow))
    for _ in range(m):
        out = lp_mul(out, u)
    return out


def _laurent(e: Expr, n: int, path) -> LaurentPoly:
    if isinstance(e, (Const, Var, Pi)):
        return LaurentPoly.from_taylor(_taylor(e, n, path))
    if isinstance(e, Add):
        return lp_add(_laurent(e.left, n, path + (0,)), _laurent(e.right, n, path + (1,)))
    if isinstance(e, Mul):
        return lp_mul(_laurent(e.left, n, path + (0,)), _laurent(e.right, n, path + (1,)))
    if isinstance(e, Div):
        num = _laurent(e.left, n, path + (0,))
        den = _laurent(e.right, n, path + (1,))
        return lp_mul(num, lp_reciprocal(den))
    if isinstance(e, PowInt):
        if e.m == 0:
            return LaurentPoly.from_taylor(TaylorPoly.constant(1, n))
        return _lp_power(_laurent(e.base, n, path + (0,)), e.m)
    arg = e.base if isinstance(e, PowRat) else e.arg
    inner = _laurent(arg, n, path + (0,))
    v = inner.valuation()
    if v is not None and v < 0:
        raise UnsupportedExpansionPoint("function of an argument with a pole at 0", path)
    u = lp_to_taylor(inner) if inner.mhigh >= 0 else TaylorPoly.constant(0, 0)
    if isinstance(e, PowRat):
        return LaurentPoly.from_taylor(_powrat(u, e.a, path))
    if e.fn == Fn.COT and u.coeffs[0] == 0:
        s = LaurentPoly.from_taylor(_compose(SIN, u))
        c = LaurentPoly.from_taylor(_compose(COS, u))
        return lp_mul(c, lp_reciprocal(s))
    return LaurentPoly.from_taylor(_apply(e.fn, u, path))


def expand_laurent(e: Expr, n: int, max_extra: int = 64) -> LaurentPoly:
    """Laurent expansion of e at 0, exact for every exponent up to n.

    Poles shrink the known range of a product or quotient, so the working
    order is raised until the result reaches exponent n.
    """
    extra = 0
    while True:
        try:
            p = _laurent(e, n + extra, ())
            if p.mhigh >= n:
                lo = min(p.mlow, n)
                return LaurentPoly(p.center, lo, tuple(p.coeff(m) for m in range(lo, n + 1)))
        except AllZero:
            pass
        if extra >= max_extra:
            raise AllZeroDenominator(
                f"a denominator vanishes to every order up to {n + extra}")
        extra = max(1, 2 * extra)
