from fractions import Fraction as F

import pytest

from analysis_kernel.errors import AllZeroDenominator
from analysis_kernel.expr import eval_guarded, parse
from analysis_kernel.limits import (MINUS_INFINITY, NO_LIMIT, PLUS_INFINITY, Finite, LimitResult,
                                    laurent_ratio_limit, ratio_limit)
from analysis_kernel.taylor import LaurentPoly

NUM = "sin(2*x) - 2*sin(x)"

CASES = [
    (NUM, "cos(2*x) - cos(x)", 3, Finite(0)),
    (NUM, "cos(2*x) - cos(x) + 3*x^2/2", 4, NO_LIMIT),
    (NUM, "arctan(x) - x + x^3/3", 5, MINUS_INFINITY),
    ("sin(x)", "x", 1, Finite(1)),
    ("1 - cos(x)", "x^2", 2, Finite(F(1, 2))),
    ("exp(x) - 1 - x", "x^4", 2, PLUS_INFINITY),  # needs doubling past the given order
    ("exp(x) - 1 - x", "x^3", 2, NO_LIMIT),
    ("1", "1/sin(x)", 1, Finite(0)),
    ("1/x", "1/sin(x)^2", 1, Finite(0)),
    ("1", "x^2*sin(x)^2", 1, PLUS_INFINITY),
]


@pytest.mark.parametrize("f, g, n, expected", CASES)
def test_ratio_limit(f, g, n, expected):
    assert ratio_limit(parse(f), parse(g), n) == expected


@pytest.mark.parametrize("f, g, n, expected", CASES[:3])
def test_verdict_is_stable_under_higher_order(f, g, n, expected):
    for m in range(n + 1, 2 * n + 1):
        assert ratio_limit(parse(f), parse(g), m) == expected


@pytest.mark.parametrize("f, g", [("sin(x)", "x"), ("1 - cos(x)", "x^2"),
                                  ("tan(x) - x", "x^3"), ("log(1+x)", "exp(x) - 1")])
def test_finite_limits_agree_with_sampled_values(f, g):
    verdict = ratio_limit(parse(f), parse(g))
    assert verdict.tag == "Finite"
    ratio = parse(f"({f})/({g})")
    for k in (10, 15, 20):
        for x in (F(1, 2 ** k), F(-1, 2 ** k)):
            v = eval_guarded(ratio, x, 60)
            assert abs(v.mid - verdict.value) <= F(4, 2 ** k) + v.width


def test_plus_infinity_samples_are_large():
    f, g = parse("1"), parse("x^2*sin(x)^2")
    assert ratio_limit(f, g) == PLUS_INFINITY
    for k in range(16, 21):
        for x in (F(1, 2 ** k), F(-1, 2 ** k)):
            assert eval_guarded(parse("1/(x^2*sin(x)^2)"), x, 30).lo > 1000


def test_identical_expressions_are_inconclusive():
    verdict = ratio_limit(parse("sin(x) - sin(x)"), parse("x - x"), 4)
    assert verdict == LimitResult("Inconclusive", max_order=32)
    assert str(verdict) == "inconclusive(32)"


def test_laurent_ratio_limit():
    x = LaurentPoly.of(1, [1])
    assert laurent_ratio_limit(x, x) == Finite(1)
    assert laurent_ratio_limit(LaurentPoly.of(0, [1]), LaurentPoly.of(2, [1])) == PLUS_INFINITY
    assert laurent_ratio_limit(LaurentPoly.of(0, [1]), LaurentPoly.of(1, [1])) == NO_LIMIT
    assert laurent_ratio_limit(LaurentPoly.of(0, [-1]), LaurentPoly.of(2, [1])) == MINUS_INFINITY
    assert laurent_ratio_limit(LaurentPoly.of(-1, [3]), LaurentPoly.of(-1, [2])) == Finite(F(3, 2))
    with pytest.raises(AllZeroDenominator):
        laurent_ratio_limit(x, LaurentPoly.of(0, [0, 0]))


def test_rendering():
    assert str(Finite(F(-3, 2))) == "finite -3/2"
    assert str(PLUS_INFINITY) == "+inf"
    assert str(NO_LIMIT) == "no-limit"
