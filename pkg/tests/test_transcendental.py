import itertools
import math
from fractions import Fraction as F

import pytest

from analysis_kernel.errors import BudgetExceeded, ZeroAtAlpha, ZeroValue
from analysis_kernel.transcendental import (CantorState, cantor_step, cantor_stream, certify_state,
                                            enumerate_polynomials, liouville_certificate,
                                            liouville_digit, liouville_digits, liouville_partial,
                                            liouville_tail_upper, nonvanishing_radius, poly_eval,
                                            poly_rational_lower_bound)

FACTORIALS = {math.factorial(m) for m in range(1, 9)}


def test_liouville_digits():
    assert liouville_digits(30) == "110001000000000000000001000000"
    assert [liouville_digit(n) for n in (1, 2, 3, 6, 24, 25, 120)] == [1, 1, 0, 1, 1, 0, 1]
    assert all(liouville_digit(n) == (n in FACTORIALS) for n in range(1, 10 ** 4 + 1))


@pytest.mark.parametrize("m", range(1, 7))
def test_liouville_certificate(m):
    z, q, gap = liouville_certificate(m)
    assert q == 10 ** math.factorial(m) and F(z, q) == liouville_partial(m)
    assert gap == F(2, q ** (m + 1))
    assert liouville_tail_upper(m) < gap


def test_liouville_certificate_examples_and_budget():
    assert liouville_certificate(1) == (1, 10, F(2, 100))
    assert liouville_certificate(2) == (11, 100, F(2, 10 ** 6))
    assert liouville_certificate(3).gap_bound == F(2, 10 ** 24)
    with pytest.raises(BudgetExceeded):
        liouville_certificate(7)


@pytest.mark.parametrize("m", range(1, 6))
def test_partial_sums_and_tail_bracket_longer_sums(m):
    lo = liouville_partial(m)
    hi = lo + 2 * F(1, 10 ** math.factorial(m + 1))
    for longer in range(m + 1, 7):
        assert lo <= liouville_partial(longer) <= hi


def test_poly_rational_lower_bound():
    assert poly_rational_lower_bound((-2, 0, 1), F(3, 2)) == F(1, 4)
    assert poly_rational_lower_bound((-2, 0, 0, 1), F(5, 4)) == F(3, 64)
    with pytest.raises(ZeroValue):
        poly_rational_lower_bound((-5, 1), 5)
    for p in itertools.islice(enumerate_polynomials(), 200):
        for x in (F(1, 3), F(-7, 5), F(22, 7)):
            if poly_eval(p, x):
                n = max(len(p) - 1, 0)
                assert poly_rational_lower_bound(p, x) >= F(1, x.denominator ** n)


def test_nonvanishing_radius_examples():
    assert nonvanishing_radius((-1, 1), 0) == 4
    assert nonvanishing_radius((-2, 0, 1), 1) == 72
    assert nonvanishing_radius((2,), 0) == 2
    with pytest.raises(ZeroAtAlpha):
        nonvanishing_radius((-1, 1), 1)


def test_enumeration_is_fair_and_starts_with_constants():
    head = list(itertools.islice(enumerate_polynomials(), 2000))
    assert head[:4] == [(-1,), (1,), (-2,), (2,)]
    assert len(set(head)) == len(head)
    assert all(any(c for c in p) for p in head)
    for p in [(0, 1), (-2, 0, 1), (1, 1, 1), (0, 0, 0, 1)]:
        assert p in head


def test_cantor_steps_keep_every_interval_root_free():
    state = CantorState()
    prev_k = 0
    for p in itertools.islice(enumerate_polynomials(), 30):
        step = cantor_step(state, p)
        assert step.k > prev_k
        assert (state.alpha * 10 ** state.k).denominator == 1
        hi = state.alpha + F(1, 10 ** state.k)
        assert poly_eval(p, state.alpha) != 0 and poly_eval(p, hi) != 0
        prev_k = step.k
    assert all(s.j == 0 for s in state.trace[:4])  # constants never vanish
    assert certify_state(state)


def test_cantor_digits_are_stable_prefixes():
    digits, state = cantor_stream(25, 400)
    assert len(digits) == min(400, state.k) and all(0 <= d <= 9 for d in digits)
    longer, _ = cantor_stream(40, 400)
    assert longer[:len(digits)] == digits
    assert 0 <= state.alpha < 1
