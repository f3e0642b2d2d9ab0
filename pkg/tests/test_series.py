import math
import random
from fractions import Fraction as F

import mpmath
import pytest

from analysis_kernel.errors import CertificateViolated, NotRiemannian, NotRiemannianProduct
from analysis_kernel.series import (MINUS_INF, NO_SUM, PLUS_INF, SeriesTerms,
                                    alternating_harmonic, binomial_series_domain, cauchy_product,
                                    convergence_test, euler_product, exp_terms, expr_terms,
                                    geometric, group_terms, harmonic, harmonic_gamma_check,
                                    leibniz_bracket, leibniz_pi, parse_terms, partial_sums,
                                    rearrange_pattern, rearrange_product_to_target,
                                    rearrange_to_target, zeta, zeta_classify, zeta_partial_sum)
from analysis_kernel.taylor import EXP, SIN, gen_binomial, maclaurin, tp_arith

@pytest.fixture(autouse=True)
def _mpmath_precision():
    with mpmath.workprec(120):
        yield


def mp(q):
    return mpmath.mpf(q.numerator) / q.denominator


def test_partial_sums():
    assert partial_sums(harmonic(), 5) == [1, F(3, 2), F(11, 6), F(25, 12), F(137, 60)]
    assert partial_sums(SeriesTerms(lambda n: F(0)), 3) == [0, 0, 0]
    assert partial_sums(geometric(F(1, 2)), 3) == [1, F(3, 2), F(7, 4)]


@pytest.mark.parametrize("kind, terms, params, expected", [
    ("Root", geometric(F(1, 2)), {}, "Converges"),
    ("Root", geometric(F(-1, 2)), {}, "Converges"),
    ("Root", geometric(2), {}, "DivergesPlusInf"),
    ("Ratio", exp_terms(), {}, "Converges"),
    ("Condensation", harmonic(), {}, "DivergesPlusInf"),
    ("Condensation", zeta(2), {"sub": "Root"}, "Converges"),
    ("NCC", geometric(2), {}, "DivergesPlusInf"),
    ("NCC", zeta(2), {}, "Inconclusive"),
    ("Comparison", expr_terms("1/(n^2+n)"), {"majorant": zeta(2), "majorant_test": "Condensation"},
     "Converges"),
    ("Comparison", expr_terms("1/(2*n)"), {"minorant": harmonic(), "factor": F(1, 2)},
     "DivergesPlusInf"),
])
def test_convergence_tests(kind, terms, params, expected):
    assert convergence_test(kind, terms, **params).tag == expected


def test_untagged_terms_stay_inconclusive():
    # same terms as geometric(1/2) but without a closed form
    assert convergence_test("Root", expr_terms("1/(n*n)")).tag == "Inconclusive"
    assert convergence_test("Ratio", expr_terms("1/(n+1)")).tag == "Inconclusive"


def test_condensation_needs_its_certificate():
    with pytest.raises(CertificateViolated):
        convergence_test("Condensation", alternating_harmonic())


@pytest.mark.parametrize("s, tag", [("1/2", "DivergesPlusInf"), (1, "DivergesPlusInf"),
                                    ("3/2", "Converges"), (2, "Converges"), (3, "Converges"),
                                    (-1, "DivergesPlusInf")])
def test_zeta_classify(s, tag):
    assert zeta_classify(F(s)).tag == tag


def test_leibniz_brackets():
    assert leibniz_bracket(alternating_harmonic(), 1) == (F(1, 2), 1)
    assert leibniz_bracket(alternating_harmonic(), 2) == (F(7, 12), F(5, 6))
    assert leibniz_bracket(leibniz_pi(), 2) == (F(76, 105), F(13, 15))
    prev = None
    for n in range(1, 40):
        lo, hi = leibniz_bracket(alternating_harmonic(), n)
        assert mp(lo) <= mpmath.log(2) <= mp(hi)
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)
    with pytest.raises(CertificateViolated) as err:
        leibniz_bracket(harmonic(), 2)
    assert err.value.witness == 2


def test_cauchy_product():
    assert cauchy_product(exp_terms(), exp_terms()).prefix(8) == [
        F(2 ** n, math.factorial(n)) for n in range(8)]
    assert cauchy_product(geometric(F(1, 2)), geometric(F(1, 2))).prefix(10) == [
        F(n + 1, 2 ** n) for n in range(10)]
    delta = SeriesTerms(lambda n: F(int(n == 0)), 0)
    assert cauchy_product(delta, leibniz_pi()).prefix(6) == leibniz_pi().prefix(6)


@pytest.mark.parametrize("order", range(11))
def test_cauchy_product_matches_taylor_multiplication(order):
    a, b = maclaurin(SIN, order), maclaurin(EXP, order)
    terms_a = SeriesTerms(lambda n: a.coeffs[n], 0)
    terms_b = SeriesTerms(lambda n: b.coeffs[n], 0)
    assert cauchy_product(terms_a, terms_b).prefix(order + 1) == list(tp_arith("mul", a, b).coeffs)


def test_grouping():
    grouped = group_terms(alternating_harmonic(), 2)
    assert grouped.prefix(100) == [F(1, (2 * n - 1) * 2 * n) for n in range(1, 101)]
    assert group_terms(leibniz_pi(), 1).prefix(10) == leibniz_pi().prefix(10)
    ones = SeriesTerms(lambda n: F((-1) ** (n + 1)))
    assert group_terms(ones, 2).prefix(20) == [0] * 20


def test_grouped_partial_sums_are_a_subsequence():
    rng = random.Random(5)
    sizes = [rng.randint(1, 5) for _ in range(40)]
    t = leibniz_pi()
    grouped = partial_sums(group_terms(t, sizes), 40)
    original = partial_sums(t, sum(sizes))
    ends = [sum(sizes[:k + 1]) for k in range(40)]
    assert grouped == [original[e - 1] for e in ends]


def test_absolutely_convergent_reordering_keeps_the_sum():
    t = geometric(F(1, 2), start=1)
    rng = random.Random(20)
    reference = sum(t.prefix(400))
    for _ in range(20):
        order = list(range(1, 201))
        rng.shuffle(order)
        order += range(201, 401)
        assert abs(sum(t(i) for i in order) - reference) <= 2 * F(1, 2 ** 199)


def _check_overshoot(plan, target, switches):
    """After each phase switch, |s - target| is at most the last emitted term."""
    checked = 0
    for pos in plan.switch_positions:
        if pos == 0:
            continue  # empty first phase: the sum is 0 and no term was emitted yet
        s = plan.partial_sums[pos - 1]
        assert abs(s - target) <= abs(plan.t(plan.emitted[pos - 1]))
        checked += 1
        if checked == switches:
            return
    raise AssertionError("not enough phase switches")


@pytest.mark.parametrize("target", [0, 1, F(-3, 2), F(1, 3)])
def test_rearrangement_to_a_rational_target(target):
    plan = rearrange_to_target(alternating_harmonic(), target, 2000)
    _check_overshoot(plan, target, 20)
    assert len(set(plan.emitted)) == len(plan.emitted)
    # every index eventually appears: the smallest indices are all used
    assert set(range(1, 51)) <= set(plan.emitted)
    assert abs(plan.partial_sums[-1] - target) < F(1, 50)


def test_rearrangement_plan_extends_lazily():
    plan = rearrange_to_target(alternating_harmonic(), 1, 10)
    head = list(plan.emitted)
    plan.extend(100)
    assert plan.emitted[:10] == head and len(plan.emitted) == 100


def test_rearrangement_to_infinite_targets():
    plan = rearrange_to_target(alternating_harmonic(), PLUS_INF, 3000)
    assert plan.partial_sums[-1] > 3
    plan = rearrange_to_target(alternating_harmonic(), MINUS_INF, 3000)
    assert plan.partial_sums[-1] < -2
    plan = rearrange_to_target(alternating_harmonic(), NO_SUM, 3000)
    assert min(plan.partial_sums) < -1 and max(plan.partial_sums) > 1


def test_rearrangement_needs_a_riemannian_series():
    with pytest.raises(NotRiemannian):
        rearrange_to_target(geometric(F(-1, 2), start=1), 0, 10)


def test_two_positives_one_negative_pattern():
    # 1 - 1 + 1/2 - 1/2 + ... sums to 0; two positives per negative pushes it above 1/2
    t = SeriesTerms(lambda n: F(1, (n + 1) // 2) * (1 if n % 2 else -1))
    plan = rearrange_pattern(t, 2, 1, 3000)
    assert plan.partial_sums[-1] > F(1, 2)


def test_product_rearrangement():
    factors = SeriesTerms(lambda n: 1 + F((-1) ** n, n), 2)
    for target in (F(1), F(3), F(1, 2)):
        plan = rearrange_product_to_target(factors, target, 3000)
        for pos in [p for p in plan.switch_positions if p][:20]:
            last = factors(plan.emitted[pos - 1])
            ratio = plan.partial_sums[pos - 1] / target
            assert min(last, 1 / last) <= ratio <= max(last, 1 / last)
        assert len(set(plan.emitted)) == len(plan.emitted)
    ones = SeriesTerms(lambda n: F(1))
    assert rearrange_product_to_target(ones, 1, 50).partial_sums == [1] * 50


def test_negative_factor_forces_a_nonpositive_target():
    factors = SeriesTerms(lambda n: F(-2) if n == 1 else 1 + F((-1) ** n, n))
    with pytest.raises(NotRiemannianProduct):
        rearrange_product_to_target(factors, 1, 10)
    plan = rearrange_product_to_target(factors, -1, 3000)
    assert plan.emitted[0] == 1 and abs(plan.partial_sums[-1] + 1) < F(1, 20)


def test_euler_product_matches_zeta_two():
    assert abs(euler_product(2, 97) - zeta_partial_sum(2, 10 ** 4)) < F(1, 100)


def test_harmonic_gamma_check():
    h, r = harmonic_gamma_check(1)
    assert h == 1
    # the stored constant carries 30 digits
    assert abs(mp(r.mid) - (1 - mpmath.euler)) <= mpmath.mpf(10) ** -29
    assert harmonic_gamma_check(5)[0] == F(137, 60)
    h, r = harmonic_gamma_check(10 ** 4)
    assert max(abs(r.lo), abs(r.hi)) <= F(1, 10 ** 4)


@pytest.mark.parametrize("a, text, inside, outside", [
    (3, "R", [-100, 100], []),
    (F(1, 2), "[-1, 1]", [-1, 1], [F(-11, 10)]),
    (F(-1, 2), "(-1, 1]", [1], [-1]),
    (-2, "(-1, 1)", [0], [-1, 1]),
])
def test_binomial_series_domain(a, text, inside, outside):
    dom = binomial_series_domain(a)
    assert str(dom) == text
    assert all(x in dom for x in inside)
    assert not any(x in dom for x in outside)


def test_binomial_coefficient_decay():
    a = F(1, 2)
    for n in range(10, 201):
        scaled = abs(float(gen_binomial(a, n))) * n ** 1.5
        assert 0.1 <= scaled <= 10


def test_term_descriptions():
    assert parse_terms("geometric:1/3").prefix(3) == [1, F(1, 3), F(1, 9)]
    assert parse_terms("zeta:2").prefix(3) == [1, F(1, 4), F(1, 9)]
    assert parse_terms("altharmonic").prefix(2) == [1, F(-1, 2)]
    assert parse_terms("custom:1/(n*(n+1))").prefix(2) == [F(1, 2), F(1, 6)]
    with pytest.raises(ValueError):
        parse_terms("zeta:1/2")
    with pytest.raises(ValueError):
        parse_terms("bogus")
