"""Exact infinite-series toolkit.

Terms are pure generators of exact rationals.  Tests whose hypotheses are
about infinite tails (root, ratio) only give a verdict when the generator
carries a closed form whose limsup is known exactly; otherwise they report
what the window shows and stay Inconclusive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Union

from . import intervals as iv
from .errors import CertificateViolated, NotRiemannian, NotRiemannianProduct
from .intervals import Interval
from .numbers import as_rational

NONNEGATIVE_DECREASING = "NonnegativeDecreasing"
ALTERNATING_LEIBNIZ = "AlternatingLeibniz"
RIEMANNIAN = "Riemannian"

# Euler-Mascheroni constant to 30 decimals (OEIS A001620).
EULER_GAMMA = Fraction("0.577215664901532860606512090082")
EULER_GAMMA_ERROR = Fraction(1, 10 ** 30)


# --- closed forms -------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    """Shape of a term sequence whose root and ratio limsups are known exactly.

    kind: "geometric" (c q^n), "pseries" (n^-s), "twopower" (c 2^(e n)),
    "factorial" (x^n / n!).
    """
    kind: str
    param: Fraction

    def limsup_vs_one(self) -> int:
        """Sign of (limsup |a_n|^(1/n)) - 1; ratio limsups coincide for these shapes."""
        if self.kind == "geometric":
            return (abs(self.param) > 1) - (abs(self.param) < 1)
        if self.kind == "pseries":
            return 0
        if self.kind == "twopower":
            return (self.param > 0) - (self.param < 0)
        if self.kind == "factorial":
            return -1
        raise ValueError(self.kind)

    def terms_vanish(self) -> bool:
        if self.kind == "geometric":
            return abs(self.param) < 1
        if self.kind == "pseries":
            return self.param > 0
        if self.kind == "twopower":
            return self.param < 0
        return True

    def condensed(self) -> Optional["ClosedForm"]:
        """Closed form of 2^n a_(2^n), when known."""
        if self.kind == "pseries":
            return ClosedForm("twopower", 1 - self.param)
        if self.kind == "twopower":
            return None
        if self.kind == "geometric" and abs(self.param) < 1:
            return ClosedForm("factorial", Fraction(0))  # decays faster than any geometric
        return None


@dataclass(frozen=True)
class SeriesTerms:
    """a_n for n = start, start+1, ...; ``term`` must be deterministic."""
    term: Callable[[int], Fraction]
    start: int = 1
    certificates: frozenset = frozenset()
    closed_form: Optional[ClosedForm] = None
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "term", lru_cache(maxsize=None)(self.term))
        object.__setattr__(self, "certificates", frozenset(self.certificates))

    def __call__(self, n: int) -> Fraction:
        return self.term(n)

    def prefix(self, count: int) -> List[Fraction]:
        return [self.term(self.start + i) for i in range(count)]

    def with_certificates(self, *certs) -> "SeriesTerms":
        return SeriesTerms(self.term, self.start, self.certificates | set(certs),
                           self.closed_form, self.name)


def geometric(q, start: int = 0) -> SeriesTerms:
    q = as_rational(q)
    certs = set()
    if 0 <= q <= 1:
        certs.add(NONNEGATIVE_DECREASING)
    if -1 <= q <= 0:
        certs.add(ALTERNATING_LEIBNIZ)
    return SeriesTerms(lambda n: q ** (n - start), start, certs, ClosedForm("geometric", q),
                       f"geometric:{q}")


def zeta(s: int) -> SeriesTerms:
    """1/n^s; only integer s keeps the terms rational."""
    if int(s) != s:
        raise ValueError("zeta terms are rational only for integer s")
    s = int(s)
    certs = {NONNEGATIVE_DECREASING} if s >= 0 else set()
    return SeriesTerms(lambda n: Fraction(1, n ** s) if s >= 0 else Fraction(n ** -s), 1,
                       certs, ClosedForm("pseries", Fraction(s)), f"zeta:{s}")


def harmonic() -> SeriesTerms:
    t = zeta(1)
    return SeriesTerms(t.term, 1, t.certificates, t.closed_form, "harmonic")


def alternating_harmonic() -> SeriesTerms:
    return SeriesTerms(lambda n: Fraction((-1) ** (n + 1), n), 1,
                       {ALTERNATING_LEIBNIZ, RIEMANNIAN}, None, "altharmonic")


def leibniz_pi() -> SeriesTerms:
    """1 - 1/3 + 1/5 - ..."""
    return SeriesTerms(lambda n: Fraction((-1) ** (n + 1), 2 * n - 1), 1,
                       {ALTERNATING_LEIBNIZ, RIEMANNIAN}, None, "leibniz")


def exp_terms(x=1) -> SeriesTerms:
    """x^n / n! from n = 0."""
    x = as_rational(x)
    return SeriesTerms(lambda n: x ** n / math.factorial(n), 0, (),
                       ClosedForm("factorial", x), f"exp:{x}")


def expr_terms(text: str, start: int = 1) -> SeriesTerms:
    """Terms given by an expression in n, evaluated exactly."""
    from .expr.evaluate import exact_value
    from .expr.text import parse
    e = parse(text, var="n")

    def term(n):
        v = exact_value(e, Fraction(n))
        if not isinstance(v, Fraction):
            raise ValueError(f"term {n} of {text!r} is not a rational number")
        return v
    return SeriesTerms(term, start, (), None, f"custom:{text}")


def parse_terms(text: str) -> SeriesTerms:
    """geometric:q, zeta:s, altharmonic, harmonic, leibniz, exp, custom:<expr in n>."""
    kind, _, arg = text.partition(":")
    if kind == "geometric":
        return geometric(arg)
    if kind == "zeta":
        s = as_rational(arg)
        if s.denominator != 1:
            raise ValueError("zeta terms need an integer s; use zeta_classify for rational s")
        return zeta(int(s))
    if kind == "harmonic" and not arg:
        return harmonic()
    if kind == "altharmonic" and not arg:
        return alternating_harmonic()
    if kind == "leibniz" and not arg:
        return leibniz_pi()
    if kind == "exp":
        return exp_terms(arg or 1)
    if kind == "custom" and arg:
        return expr_terms(arg)
    raise ValueError(f"unknown series terms {text!r}")


# --- sums and verdicts ------------------------------------------------------------------

def partial_sums(t: SeriesTerms, n: int) -> List[Fraction]:
    out, s = [], Fraction(0)
    for a in t.prefix(n):
        s += a
        out.append(s)
    return out


@dataclass(frozen=True)
class Verdict:
    tag: str  # Converges, DivergesPlusInf, DivergesMinusInf, NoSum, Inconclusive
    test: str
    witness: dict = field(default_factory=dict, compare=False)

    def __str__(self):
        return self.tag


def _check_nonneg_decreasing(t: SeriesTerms, count: int):
    prev = None
    for i, a in enumerate(t.prefix(count)):
        n = t.start + i
        if a < 0 or (prev is not None and a > prev):
            raise CertificateViolated(f"{t.name} is not nonnegative and decreasing at n = {n}",
                                      witness=n)
        prev = a


def _divergence_tag(t: SeriesTerms, window: int) -> str:
    terms = t.prefix(window)
    tail = terms[len(terms) // 2:]
    if all(a >= 0 for a in tail):
        return "DivergesPlusInf"
    if all(a <= 0 for a in tail):
        return "DivergesMinusInf"
    return "NoSum"


def _limsup_test(kind: str, t: SeriesTerms, window: int) -> Verdict:
    cf = t.closed_form
    if cf is None:
        terms = t.prefix(window + 1)
        half = terms[window // 2:]
        if kind == "Root":
            est = max(float(abs(a)) ** (1 / (t.start + window // 2 + i))
                      for i, a in enumerate(half)) if half else None
        else:
            ratios = [abs(b / a) for a, b in zip(half, half[1:]) if a]
            est = float(max(ratios)) if ratios else None
        return Verdict("Inconclusive", kind, {"window": window, "estimate": est,
                                              "reason": "no closed form for the limsup"})
    cmp = cf.limsup_vs_one()
    witness = {"window": window, "closed_form": cf}
    if cmp < 0:
        return Verdict("Converges", kind, witness)
    if cmp > 0:
        return Verdict(_divergence_tag(t, window), kind, witness)
    return Verdict("Inconclusive", kind, witness)


def _ncc(t: SeriesTerms, window: int) -> Verdict:
    cf = t.closed_form
    if cf is not None and not cf.terms_vanish():
        return Verdict(_divergence_tag(t, window), "NCC", {"closed_form": cf})
    return Verdict("Inconclusive", "NCC", {"window": window})


def convergence_test(kind: str, t: SeriesTerms, window: int = 64, **params) -> Verdict:
    """Run one named test.

    kind: Root, Ratio, NCC, Comparison (params majorant= or minorant=, with an
    optional factor=), Condensation (param sub= a kind or "Auto").
    """
    kind = {"root": "Root", "ratio": "Ratio", "ccc": "Condensation", "ncc": "NCC",
            "condensation": "Condensation", "comparison": "Comparison"}.get(kind, kind)
    if window < 1:
        raise ValueError("window must be positive")
    if kind in ("Root", "Ratio"):
        if kind == "Ratio" and any(a == 0 for a in t.prefix(window)):
            return Verdict("Inconclusive", kind, {"reason": "zero term in the window"})
        return _limsup_test(kind, t, window)
    if kind == "NCC":
        return _ncc(t, window)
    if kind == "Condensation":
        if NONNEGATIVE_DECREASING not in t.certificates:
            raise CertificateViolated(f"{t.name} carries no NonnegativeDecreasing certificate")
        _check_nonneg_decreasing(t, max(window, 2))
        sub = params.get("sub", "Auto")
        if t.start > 1:
            raise ValueError("condensation needs terms from n = 1")
        cf = t.closed_form.condensed() if t.closed_form else None
        cond = SeriesTerms(lambda k: 2 ** k * t.term(2 ** k), 0, (), cf, f"condensed {t.name}")
        small = min(window, 24)
        subs = ("Root", "NCC") if sub == "Auto" else (sub,)
        v = Verdict("Inconclusive", "Condensation")
        for s in subs:
            v = convergence_test(s, cond, small)
            if v.tag != "Inconclusive":
                break
        return Verdict(v.tag, "Condensation", {"sub": v.test, "sub_witness": v.witness})
    if kind == "Comparison":
        factor = as_rational(params.get("factor", 1))
        if "majorant" in params:
            b = params["majorant"]
            bv = convergence_test(params.get("majorant_test", "Root"), b, window)
            ok = all(abs(x) <= factor * y for x, y in zip(t.prefix(window), b.prefix(window)))
            if ok and bv.tag == "Converges":
                return Verdict("Converges", "Comparison", {"window": window, "majorant": b.name})
            return Verdict("Inconclusive", "Comparison", {"window": window})
        if "minorant" in params:
            b = params["minorant"]
            bv = convergence_test(params.get("minorant_test", "Condensation"), b, window)
            ok = all(x >= factor * y >= 0 for x, y in zip(t.prefix(window), b.prefix(window)))
            if ok and factor > 0 and bv.tag == "DivergesPlusInf":
                return Verdict("DivergesPlusInf", "Comparison",
                               {"window": window, "minorant": b.name})
            return Verdict("Inconclusive", "Comparison", {"window": window})
        raise ValueError("comparison needs a majorant or a minorant")
    raise ValueError(f"unknown test {kind!r}")


def zeta_classify(s) -> Verdict:
    s = as_rational(s)
    return Verdict("Converges" if s > 1 else "DivergesPlusInf", "zeta", {"s": s})


def leibniz_bracket(t: SeriesTerms, n: int):
    """(s_2n, s_2n-1): the sum of an alternating series with decreasing magnitudes lies between."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = t.prefix(2 * n)
    for i, a in enumerate(terms):
        sign_ok = (a >= 0) if i % 2 == 0 else (a <= 0)
        if not sign_ok or (i and abs(a) > abs(terms[i - 1])):
            raise CertificateViolated(
                f"{t.name} is not alternating with decreasing magnitudes at n = {t.start + i}",
                witness=t.start + i)
    sums = partial_sums(t, 2 * n)
    return sums[-1], sums[-2]


def cauchy_product(a: SeriesTerms, b: SeriesTerms) -> SeriesTerms:
    """c_n = sum_{j=0..n} a_j b_(n-j), counting both series from 0."""
    def term(n):
        return sum((a.term(a.start + j) * b.term(b.start + n - j) for j in range(n + 1)),
                   Fraction(0))
    return SeriesTerms(term, 0, (), None, f"({a.name})*({b.name})")


def group_terms(t: SeriesTerms, sizes: Union[int, Sequence[int], Callable[[int], int]]) -> SeriesTerms:
    """b_k = sum of the k-th block (k from 1) of consecutive terms of t."""
    if isinstance(sizes, int):
        size_of = lambda k: sizes
    elif callable(sizes):
        size_of = sizes
    else:
        fixed = list(sizes)
        size_of = lambda k: fixed[k - 1]

    @lru_cache(maxsize=None)
    def offset(k):  # original position of the first term of block k
        return t.start if k == 1 else offset(k - 1) + size_of(k - 1)

    def term(k):
        size = size_of(k)
        if size < 1:
            raise ValueError("block sizes must be positive")
        lo = offset(k)
        return sum((t.term(i) for i in range(lo, lo + size)), Fraction(0))
    return SeriesTerms(term, 1, (), None, f"grouped {t.name}")


# --- rearrangements -------------------------------------------------------------------

PLUS_INF = "PlusInf"
MINUS_INF = "MinusInf"
NO_SUM = "NoSum"
RIEMANN_PREFIX = 4096
RIEMANN_TAIL = Fraction(1, 1000)


class _Stream:
    """Unused indices of t whose terms satisfy pred, in increasing order."""

    def __init__(self, t: SeriesTerms, pred):
        self.t = t
        self.pred = pred
        self.next_index = t.start

    def take(self) -> int:
        while True:
            i = self.next_index
            self.next_index += 1
            if self.pred(self.t.term(i)):
                return i


class RearrangementPlan:
    """A lazily extended rearrangement; ``emitted`` holds original indices in order.

    ``switch_positions`` lists emitted counts at which a phase ended.
    """

    def __init__(self, t: SeriesTerms, target, steps):
        self.t = t
        self.target = target
        self.emitted: List[int] = []
        self.partial_sums: List[Fraction] = []
        self.switch_positions: List[int] = []
        self._steps = steps
        self._value = Fraction(0)

    def _emit(self, i: int, value):
        self.emitted.append(i)
        self._value = value
        self.partial_sums.append(value)

    def extend(self, count: int) -> "RearrangementPlan":
        while len(self.emitted) < count:
            next(self._steps)
        return self

    def __iter__(self):
        k = 0
        while True:
            self.extend(k + 1)
            yield self.emitted[k]
            k += 1


def _riemannian_check(t: SeriesTerms, threshold: Fraction):
    terms = t.prefix(RIEMANN_PREFIX)
    pos = sum((a for a in terms if a > 0), Fraction(0))
    neg = -sum((a for a in terms if a < 0), Fraction(0))
    tail = max(abs(a) for a in terms[3 * len(terms) // 4:])
    if pos <= threshold or neg <= threshold or tail >= RIEMANN_TAIL:
        raise NotRiemannian(
            f"{t.name}: positive part {float(pos):.4g}, negative part {float(neg):.4g} "
            f"(need > {threshold}), tail max {float(tail):.3g} over {RIEMANN_PREFIX} terms")


def _greedy_sum(plan: RearrangementPlan, t: SeriesTerms, target):
    up = _Stream(t, lambda a: a >= 0)
    down = _Stream(t, lambda a: a < 0)
    s = Fraction(0)

    def emit(stream):
        nonlocal s
        i = stream.take()
        s += t.term(i)
        plan._emit(i, s)

    if isinstance(target, Fraction):
        while True:
            while s < target:
                emit(up)
                yield
            plan.switch_positions.append(len(plan.emitted))
            while s >= target:
                emit(down)
                yield
            plan.switch_positions.append(len(plan.emitted))
    level = 1
    while True:
        if target == PLUS_INF or target == NO_SUM:
            while s <= level:
                emit(up)
                yield
            plan.switch_positions.append(len(plan.emitted))
        if target == PLUS_INF:
            emit(down)
            yield
        if target == MINUS_INF or target == NO_SUM:
            while s >= -level:
                emit(down)
                yield
            plan.switch_positions.append(len(plan.emitted))
        if target == MINUS_INF:
            emit(up)
            yield
        if target != NO_SUM:
            level += 1


def _as_target(target):
    if target in (PLUS_INF, MINUS_INF, NO_SUM):
        return target
    return as_rational(target)


def rearrange_to_target(t: SeriesTerms, target, emit_count: int) -> RearrangementPlan:
    """Greedy rearrangement of a conditionally convergent series toward target.

    For a rational target, positives are taken while the sum is below it and
    negatives while it is at or above it (the first segment may be empty).
    For PlusInf/MinusInf the sum is pushed past +-1, +-2, ... with one term of
    the other sign in between; for NoSum it swings between above 1 and below -1.
    """
    target = _as_target(target)
    threshold = abs(target) + 1 if isinstance(target, Fraction) else Fraction(2)
    _riemannian_check(t, threshold)
    plan = RearrangementPlan(t, target, None)
    plan._steps = _greedy_sum(plan, t, target)
    return plan.extend(emit_count)


def rearrange_pattern(t: SeriesTerms, positives: int, negatives: int,
                      emit_count: int) -> RearrangementPlan:
    """Blocks of ``positives`` nonnegative terms followed by ``negatives`` negative ones."""
    plan = RearrangementPlan(t, None, None)
    up = _Stream(t, lambda a: a >= 0)
    down = _Stream(t, lambda a: a < 0)

    def steps():
        s = Fraction(0)
        while True:
            for stream, k in ((up, positives), (down, negatives)):
                for _ in range(k):
                    i = stream.take()
                    s += t.term(i)
                    plan._emit(i, s)
                    yield
                plan.switch_positions.append(len(plan.emitted))
    plan._steps = steps()
    return plan.extend(emit_count)


def _riemannian_product_check(t: SeriesTerms, target):
    factors = t.prefix(RIEMANN_PREFIX)
    if any(a == 0 for a in factors):
        raise NotRiemannianProduct("a factor is 0")
    negatives = [t.start + i for i, a in enumerate(factors) if a < 0]
    if negatives and negatives[-1] >= t.start + len(factors) // 2:
        raise NotRiemannianProduct("negative factors persist into the second half of the prefix")
    if len(negatives) % 2 and isinstance(target, Fraction) and target > 0:
        raise NotRiemannianProduct(
            "an odd number of negative factors makes every rearranged product nonpositive")
    up = down = Fraction(1)
    for a in factors:
        if abs(a) > 1:
            up *= abs(a)
        elif abs(a) < 1:
            down *= abs(a)
    if up == 1 and down == 1:
        return negatives, True
    bound = Fraction(3)
    if isinstance(target, Fraction) and target != 0:
        bound *= max(abs(target), 1 / abs(target))
    tail = max(abs(abs(a) - 1) for a in factors[3 * len(factors) // 4:])
    if up <= bound or down >= 1 / bound or tail >= RIEMANN_TAIL:
        raise NotRiemannianProduct(
            f"{t.name}: factors above 1 multiply to {float(up):.4g}, below 1 to "
            f"{float(down):.4g}, tail deviation {float(tail):.3g}")
    return negatives, False


def rearrange_product_to_target(t: SeriesTerms, target, emit_count: int) -> RearrangementPlan:
    """Rearrange factors so the products approach target (a rational, 0 or PlusInf).

    The finitely many negative factors come first; the rest are interleaved by
    the greedy rule on |product| versus |target|, which is the additive greedy
    rule on logarithms decided by exact rational comparisons.
    """
    target = PLUS_INF if target == PLUS_INF else as_rational(target)
    negatives, neutral = _riemannian_product_check(t, target)
    plan = RearrangementPlan(t, target, None)
    neg_set = set(negatives)
    magnitude = abs(target) if isinstance(target, Fraction) else None

    def steps():
        p = Fraction(1)

        def emit(i):
            nonlocal p
            p *= t.term(i)
            plan._emit(i, p)

        for i in negatives:
            emit(i)
            yield
        if neutral:
            i = t.start
            while True:
                if i not in neg_set:
                    emit(i)
                    yield
                i += 1
        up = _Stream(t, lambda a: a >= 1)
        down = _Stream(t, lambda a: 0 < a < 1)
        if magnitude is not None and magnitude != 0:
            while True:
                while abs(p) < magnitude:
                    emit(up.take())
                    yield
                plan.switch_positions.append(len(plan.emitted))
                while abs(p) >= magnitude:
                    emit(down.take())
                    yield
                plan.switch_positions.append(len(plan.emitted))
        level = 2
        while True:
            if target == PLUS_INF:
                while abs(p) <= level:
                    emit(up.take())
                    yield
                plan.switch_positions.append(len(plan.emitted))
                emit(down.take())
                yield
            else:
                while abs(p) >= Fraction(1, level):
                    emit(down.take())
                    yield
                plan.switch_positions.append(len(plan.emitted))
                emit(up.take())
                yield
            level += 1
    plan._steps = steps()
    return plan.extend(emit_count)


# --- constants and classical checks ----------------------------------------------------

def harmonic_number(n: int) -> Fraction:
    lcm = math.lcm(*range(1, n + 1)) if n else 1
    return Fraction(sum(lcm // k for k in range(1, n + 1)), lcm)


def harmonic_gamma_check(n: int, bits: int = 128):
    """(h_n, enclosure of h_n - log n - gamma)."""
    if n < 1:
        raise ValueError("n must be positive")
    h = harmonic_number(n)
    gamma = Interval(EULER_GAMMA - EULER_GAMMA_ERROR, EULER_GAMMA + EULER_GAMMA_ERROR)
    residual = iv.sub(iv.sub(Interval.point(h), iv.log_point(Fraction(n), bits), bits), gamma, bits)
    return h, residual


def zeta_partial_sum(s: int, n: int) -> Fraction:
    """sum_{k<=n} k^-s over the common denominator lcm(1..n)^s."""
    lcm = math.lcm(*range(1, n + 1))
    return Fraction(sum((lcm // k) ** s for k in range(1, n + 1)), lcm ** s)


def primes_up_to(n: int) -> List[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"[: min(2, n + 1)]
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def euler_product(s: int, prime_bound: int) -> Fraction:
    """prod_{p <= bound} (1 - p^-s)^-1."""
    out = Fraction(1)
    for p in primes_up_to(prime_bound):
        out *= Fraction(p ** s, p ** s - 1)
    return out


@dataclass(frozen=True)
class RealInterval:
    """A subset of the reals bounded by lo and hi (None for unbounded)."""
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool
    hi_closed: bool

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def __str__(self):
        if self.lo is None and self.hi is None:
            return "R"
        return (("[" if self.lo_closed else "(") + f"{self.lo}, {self.hi}"
                + ("]" if self.hi_closed else ")"))


def binomial_series_domain(a) -> RealInterval:
    """Where sum binom(a, n) x^n converges."""
    a = as_rational(a)
    if a.denominator == 1 and a >= 0:
        return RealInterval(None, None, False, False)
    if a > 0:
        return RealInterval(Fraction(-1), Fraction(1), True, True)
    if a > -1:
        return RealInterval(Fraction(-1), Fraction(1), False, True)
    return RealInterval(Fraction(-1), Fraction(1), False, False)
