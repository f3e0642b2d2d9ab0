"""Expression tree nodes and folding constructors."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction


class Fn(enum.Enum):
    EXP = "exp"
    LOG = "log"
    SIN = "sin"
    COS = "cos"
    TAN = "tan"
    COT = "cot"
    ARCSIN = "arcsin"
    ARCCOS = "arccos"
    ARCTAN = "arctan"
    ARCCOT = "arccot"
    SQRT = "sqrt"


class Expr:
    """Base class; concrete nodes are frozen dataclasses with structural equality."""
    __slots__ = ()

    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Pi(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    m: int

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class PowRat(Expr):
    base: Expr
    a: Fraction

    def __post_init__(self):
        a = Fraction(self.a)
        if a.denominator == 1:
            raise ValueError("PowRat needs a non-integer exponent; use PowInt")
        object.__setattr__(self, "a", a)

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Apply(Expr):
    fn: Fn
    arg: Expr

    def children(self):
        return (self.arg,)


X = Var()
PI = Pi()
ZERO = Const(0)
ONE = Const(1)


def const_value(e: Expr):
    return e.value if isinstance(e, Const) else None


# --- folding constructors ---------------------------------------------------------
# They fold constants and drop additive zeros / multiplicative ones, nothing more.

def add(a: Expr, b: Expr) -> Expr:
    ca, cb = const_value(a), const_value(b)
    if ca is not None and cb is not None:
        return Const(ca + cb)
    if ca == 0:
        return b
    if cb == 0:
        return a
    return Add(a, b)


def neg(e: Expr) -> Expr:
    """The parser's negation: folds into constants and leading constant factors."""
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Mul) and isinstance(e.left, Const):
        return Mul(Const(-e.left.value), e.right)
    return Mul(Const(-1), e)


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(b))


def mul(a: Expr, b: Expr) -> Expr:
    ca, cb = const_value(a), const_value(b)
    if ca is not None and cb is not None:
        return Const(ca * cb)
    if ca == 0 or cb == 0:
        return ZERO
    if ca == 1:
        return b
    if cb == 1:
        return a
    if cb is not None:
        return mul(b, a)
    if ca is not None and isinstance(b, Mul) and isinstance(b.left, Const):
        return mul(Const(ca * b.left.value), b.right)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    ca, cb = const_value(a), const_value(b)
    if cb is not None and cb != 0:
        if ca is not None:
            return Const(ca / cb)
        if cb == 1:
            return a
    if ca == 0 and cb is None:
        return ZERO
    return Div(a, b)


def powint(b: Expr, m: int) -> Expr:
    if m == 1:
        return b
    if m == 0:
        return ONE
    cb = const_value(b)
    if cb is not None and (cb != 0 or m > 0):
        return Const(cb ** m)
    return PowInt(b, m)


def powrat(b: Expr, a: Fraction) -> Expr:
    a = Fraction(a)
    if a.denominator == 1:
        return powint(b, int(a))
    return PowRat(b, a)


def apply(fn: Fn, arg: Expr) -> Expr:
    return Apply(fn, arg)


def walk(e: Expr, path=()):
    """Yield (path, node) pairs in pre-order; paths are tuples of child indices."""
    yield path, e
    for i, c in enumerate(e.children()):
        yield from walk(c, path + (i,))


def size(e: Expr) -> int:
    return 1 + sum(size(c) for c in e.children())


def depth(e: Expr) -> int:
    return 1 + max((depth(c) for c in e.children()), default=0)


def contains(e: Expr, pred) -> bool:
    return any(pred(n) for _, n in walk(e))
