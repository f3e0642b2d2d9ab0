"""Symbolic differentiation with the global derivative rules."""
from __future__ import annotations

from fractions import Fraction

from .ast import (Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var,
                  add, div, mul, powint, powrat)

_HALF = Fraction(1, 2)


def _minus(e: Expr) -> Expr:
    return mul(Const(-1), e)


def _one_minus_square(u: Expr) -> Expr:
    return add(Const(1), _minus(Mul(u, u)))


def _one_plus_square(u: Expr) -> Expr:
    return add(Const(1), Mul(u, u))


def differentiate(e: Expr) -> Expr:
    """d/dx of e, folding only trivial constants (0 and 1)."""
    return _Differentiator().d(e)


class _Differentiator:
    """Memoised by node identity, so shared subtrees are differentiated once."""

    def __init__(self):
        self.memo = {}

    def d(self, e: Expr) -> Expr:
        key = id(e)
        if key not in self.memo:
            self.memo[key] = (_rule(e, self.d), e)  # keep e alive so its id stays unique
        return self.memo[key][0]


def _rule(e: Expr, differentiate) -> Expr:
    if isinstance(e, (Const, Pi)):
        return Const(0)
    if isinstance(e, Var):
        return Const(1)
    if isinstance(e, Add):
        return add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Mul):
        f, g = e.left, e.right
        return add(mul(differentiate(f), g), mul(f, differentiate(g)))
    if isinstance(e, Div):
        f, g = e.left, e.right
        df, dg = differentiate(f), differentiate(g)
        if dg == Const(0):
            return div(df, g)
        return div(add(mul(df, g), _minus(mul(f, dg))), powint(g, 2))
    if isinstance(e, PowInt):
        u, m = e.base, e.m
        if m == 0:
            return Const(0)
        return mul(mul(Const(m), powint(u, m - 1)), differentiate(u))
    if isinstance(e, PowRat):
        u, a = e.base, e.a
        return mul(mul(Const(a), powrat(u, a - 1)), differentiate(u))
    if isinstance(e, Apply):
        return _chain(e.fn, e.arg, differentiate(e.arg))
    raise TypeError(f"not an expression: {e!r}")


def _chain(fn: Fn, u: Expr, du: Expr) -> Expr:
    if fn == Fn.EXP:
        return mul(Apply(Fn.EXP, u), du)
    if fn == Fn.LOG:
        return div(du, u)
    if fn == Fn.SIN:
        return mul(Apply(Fn.COS, u), du)
    if fn == Fn.COS:
        return _minus(mul(Apply(Fn.SIN, u), du))
    if fn == Fn.TAN:
        return div(du, PowInt(Apply(Fn.COS, u), 2))
    if fn == Fn.COT:
        return _minus(div(du, PowInt(Apply(Fn.SIN, u), 2)))
    if fn == Fn.ARCSIN:
        return div(du, PowRat(_one_minus_square(u), _HALF))
    if fn == Fn.ARCCOS:
        return _minus(div(du, PowRat(_one_minus_square(u), _HALF)))
    if fn == Fn.ARCTAN:
        return div(du, _one_plus_square(u))
    if fn == Fn.ARCCOT:
        return _minus(div(du, _one_plus_square(u)))
    if fn == Fn.SQRT:
        return mul(mul(Const(_HALF), PowRat(u, -_HALF)), du)
    raise TypeError(f"unknown function {fn}")
