"""Shared helpers for the test suite: a random SEF generator and numeric oracles."""
from __future__ import annotations

import random
from fractions import Fraction

from analysis_kernel.expr import (Add, Apply, Const, Div, Fn, Mul, Pi, PowInt, PowRat, Var,
                                  differentiate, eval_guarded)
from analysis_kernel.errors import DomainError, Uncertain
from analysis_kernel.intervals import Interval

# PASS/FAIL lines of the acceptance criteria, echoed in the terminal summary
RESULTS: list = []

X = Var()
ONE = Const(1)
TWO = Const(2)


def _one_plus_square(u):
    return Add(ONE, Mul(u, u))


def random_sef(rng: random.Random, depth: int):
    """A random expression that is SEF by construction and defined on all of R.

    Unbounded growth is kept in check: exp only sees bounded arguments and
    denominators are bounded away from 0, so values at |x| <= 2 stay modest.
    """
    if depth <= 0 or rng.random() < 0.15:
        r = rng.random()
        if r < 0.55:
            return X
        if r < 0.9:
            return Const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        return Pi()
    a = random_sef(rng, depth - 1)
    kind = rng.randrange(20)
    if kind < 5:
        b = random_sef(rng, depth - 1)
        return (Add, Mul, Add, Mul, Add)[kind](a, b)
    if kind == 5:
        return Div(a, _one_plus_square(random_sef(rng, depth - 1)))
    if kind == 6:
        return Div(a, Add(TWO, Apply(Fn.COS, random_sef(rng, depth - 1))))
    if kind == 7:
        return Apply(Fn.SIN, a)
    if kind == 8:
        return Apply(Fn.COS, a)
    if kind == 9:
        return Apply(rng.choice((Fn.ARCTAN, Fn.ARCCOT)), a)
    if kind == 10:
        return Apply(Fn.EXP, Apply(rng.choice((Fn.SIN, Fn.ARCTAN)), a))
    if kind == 11:
        return Apply(Fn.LOG, rng.choice((_one_plus_square(a), Add(TWO, Apply(Fn.SIN, a)))))
    if kind == 12:
        return Apply(Fn.TAN, Apply(Fn.SIN, a))
    if kind == 13:
        # argument in [1, 2), inside (0, pi)
        return Apply(Fn.COT, Add(ONE, Div(Mul(a, a), _one_plus_square(a))))
    if kind == 14:
        return PowRat(_one_plus_square(a), rng.choice((Fraction(1, 2), Fraction(3, 2), Fraction(-1, 3))))
    if kind == 15:
        return Apply(Fn.SQRT, Add(TWO, Apply(Fn.COS, a)))
    if kind == 16:
        return Apply(Fn.ARCSIN, Div(Apply(Fn.SIN, a), TWO))
    if kind == 17:
        return Apply(Fn.ARCCOS, Div(Apply(Fn.COS, a), Const(3)))
    if kind == 18:
        return PowInt(a, 2)
    return PowInt(Add(TWO, Apply(Fn.SIN, a)), rng.choice((-2, -1, 3)))


H = Fraction(1, 2 ** 20)
SAMPLE_POINTS = [Fraction(p) for p in ("1/3", "-1/2", "3/4", "5/4", "-7/5", "2/7", "-1", "3/2")]


def finite_difference_check(e, point, h=H):
    """(ok, details) for: f'(p) enclosure contains (f(p+h) - f(p-h)) / 2h up to slack.

    slack = width(f'(p)) + width(difference quotient) + h^2/6 * sup |f'''| over
    [p-h, p+h]; the last bound is a certified box enclosure.
    """
    d1 = differentiate(e)
    d3 = differentiate(differentiate(d1))
    deriv = eval_guarded(d1, point, 53)
    plus = eval_guarded(e, point + h, 100)
    minus = eval_guarded(e, point - h, 100)
    quotient_lo = (plus.lo - minus.hi) / (2 * h)
    quotient_hi = (plus.hi - minus.lo) / (2 * h)
    third = eval_guarded(d3, Interval(point - h, point + h))
    taylor_slack = h * h / 6 * third.magnitude()
    slack = deriv.width + (quotient_hi - quotient_lo) + taylor_slack
    mid = (quotient_lo + quotient_hi) / 2
    ok = deriv.lo - slack <= mid <= deriv.hi + slack
    return ok, (deriv, mid, slack)


def valid_points(e, candidates=SAMPLE_POINTS, want=3):
    """First `want` candidates where e and its derivative evaluate without a guard failure."""
    d = differentiate(e)
    out = []
    for p in candidates:
        try:
            eval_guarded(e, p - H, 60)
            eval_guarded(e, p + H, 60)
            eval_guarded(d, p, 53)
        except (DomainError, Uncertain):
            continue
        out.append(p)
        if len(out) == want:
            break
    return out
