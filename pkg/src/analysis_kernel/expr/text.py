"""Expression text: a recursive-descent parser and its inverse renderer.

Grammar (precedence ^ > unary minus > * / > + -)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    atom   := int | 'pi' | VAR | fname '(' expr ')' | '(' expr ')'
    exponent := ['-'] int | '(' ['-'] int ['/' posint] ')'

``a - b`` is read as ``a + (-b)``; negation folds into constants and leading
constant factors, and a quotient of two constants folds into one constant.
``sqrt(u)`` becomes ``PowRat(u, 1/2)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ExprSyntaxError, UnknownIdentifier
from .ast import (Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var,
                  neg)

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.)", re.S)
_FUNCS = {f.value: f for f in Fn}


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            kind = ("int", "name", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(), pos))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, _byte_offset(self.text, tok[2]))

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise self.error(f"expected {value!r}", tok)
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            r = self.term()
            e = Add(e, r) if op == "+" else Add(e, neg(r))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            r = self.unary()
            if op == "*":
                e = Mul(e, r)
            elif isinstance(e, Const) and isinstance(r, Const) and r.value != 0:
                e = Const(e.value / r.value)
            else:
                e = Div(e, r)
        return e

    def unary(self) -> Expr:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        a = self.exponent()
        if a.denominator == 1:
            return PowInt(base, int(a))
        return PowRat(base, a)

    def _signed_int(self) -> int:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise self.error("exponent must be an integer or a parenthesised rational "
                             "(variable exponents are unsupported)", tok)
        return sign * int(tok[1])

    def exponent(self) -> Fraction:
        if self.peek()[1] == "(":
            self.take()
            num = self._signed_int()
            den = 1
            if self.peek()[1] == "/":
                self.take()
                tok = self.take()
                if tok[0] != "int" or int(tok[1]) == 0:
                    raise self.error("exponent denominator must be a positive integer", tok)
                den = int(tok[1])
            self.expect(")")
            return Fraction(num, den)
        return Fraction(self._signed_int())

    def atom(self) -> Expr:
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            return Const(int(val))
        if kind == "name":
            if val == self.var:
                return Var()
            if val == "pi":
                return Pi()
            if val in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if val == "sqrt":
                    return PowRat(arg, Fraction(1, 2))
                return Apply(_FUNCS[val], arg)
            raise UnknownIdentifier(f"unknown identifier {val!r}",
                                    _byte_offset(self.text, tok[2]))
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {val!r}", tok)


def parse(text: str, var: str = "x") -> Expr:
    """Parse expression text; ``var`` names the variable (``x`` by default)."""
    return _Parser(text, var).parse()


# --- rendering ----------------------------------------------------------------------

_ADD, _MUL, _UNARY, _POW, _ATOM = range(5)


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _negated(e: Expr):
    """The expression whose negation (as the parser builds it) is e, if any."""
    if isinstance(e, Const) and e.value < 0:
        return Const(-e.value)
    if isinstance(e, Mul) and isinstance(e.left, Const) and e.left.value < 0:
        if e.left.value == -1 and not isinstance(e.right, Const) and \
                not (isinstance(e.right, Mul) and isinstance(e.right.left, Const)):
            return e.right
        return Mul(Const(-e.left.value), e.right)
    return None


def _render(e: Expr, var: str):
    """Return (text, precedence class)."""
    if isinstance(e, Const):
        v = e.value
        if v < 0:
            return "-" + _rat(-v), _UNARY
        return _rat(v), (_ATOM if v.denominator == 1 else _MUL)
    if isinstance(e, Pi):
        return "pi", _ATOM
    if isinstance(e, Var):
        return var, _ATOM
    if isinstance(e, Add):
        left = _wrap(e.left, var, _ADD)
        pos = _negated(e.right)
        if pos is not None:
            right = _wrap(pos, var, _MUL)
            if right.startswith("-"):
                right = f"({right})"
            return f"{left} - {right}", _ADD
        return f"{left} + {_wrap(e.right, var, _ADD, strict=True)}", _ADD
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        if isinstance(e, Mul) and isinstance(e.left, Const) and e.left.value == -1:
            inner = e.right
            if not isinstance(inner, Const) and not (isinstance(inner, Mul) and isinstance(inner.left, Const)):
                return "-" + _wrap(inner, var, _UNARY), _UNARY
        left = _wrap(e.left, var, _MUL)
        right = _wrap(e.right, var, _UNARY, strict=True, no_fraction=True)
        prec = _UNARY if left.startswith("-") else _MUL
        return f"{left}{op}{right}", prec
    if isinstance(e, PowInt):
        base = _wrap(e.base, var, _ATOM)
        m = e.m
        return (f"{base}^{m}" if m >= 0 else f"{base}^({m})"), _POW
    if isinstance(e, PowRat):
        if e.a == Fraction(1, 2):
            return f"sqrt({_render(e.base, var)[0]})", _ATOM
        return f"{_wrap(e.base, var, _ATOM)}^({_rat(e.a)})", _POW
    if isinstance(e, Apply):
        return f"{e.fn.value}({_render(e.arg, var)[0]})", _ATOM
    raise TypeError(f"not an expression: {e!r}")


def _wrap(e: Expr, var: str, need: int, strict: bool = False, no_fraction: bool = False) -> str:
    text, prec = _render(e, var)
    if isinstance(e, Const) and e.value.denominator != 1 and (no_fraction or need >= _POW):
        return f"({text})"
    if prec < need or (strict and prec == need and need in (_ADD, _MUL)):
        return f"({text})"
    if text.startswith("-") and strict:
        return f"({text})"
    return text


def render(e: Expr, var: str = "x") -> str:
    """Canonical text of e; parse(render(e)) == e for trees the parser produces."""
    return _render(e, var)[0]
