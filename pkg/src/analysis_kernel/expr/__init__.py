"""Expression trees: parsing, classification, differentiation, evaluation, expansion."""
from .ast import (Add, Apply, Const, Div, Expr, Fn, Mul, Pi, PowInt, PowRat, Var)
from .classify import FnClass, classify, to_generators, uses_only_generators
from .diff import differentiate
from .evaluate import eval_guarded, exact_value, max_precision
from .expand import expand_laurent, expand_taylor
from .text import parse, render

__all__ = [
    "Add", "Apply", "Const", "Div", "Expr", "Fn", "Mul", "Pi", "PowInt", "PowRat", "Var",
    "FnClass", "classify", "to_generators", "uses_only_generators", "differentiate",
    "eval_guarded", "exact_value", "max_precision", "expand_laurent", "expand_taylor",
    "parse", "render",
]
