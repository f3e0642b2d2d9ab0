"""Exact rational arithmetic and number-representation codecs.

``Rational`` is ``fractions.Fraction``: it is always stored in lowest
terms with a positive denominator.  On top of it sit periodic decimals,
base-q words, continued fractions (finite for rationals, eventually
periodic for quadratic surds) and the Babylonian square-root recurrence.
"""
from __future__ import annotations

import decimal
import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (BudgetExceeded, DivisionByZero, InvalidDigit, LeadingZero,
                     NonCanonical, NotEnoughTerms)

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce int, Fraction or a "p/q" string to a Rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", x)
        if not m:
            raise ValueError(f"not a rational: {x!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise DivisionByZero("zero denominator")
        return Fraction(int(m.group(1)), den)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Ordering(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"

    def __str__(self):
        return self.value


def rat_arith(op: str, x, y=None):
    """Field operations of Q; ``cmp`` returns an ``Ordering``."""
    x = as_rational(x)
    if op == "neg":
        return -x
    y = as_rational(y)
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise DivisionByZero("division by the rational 0")
        return x / y
    if op == "cmp":
        # a/b < c/d  iff  a*d < c*b, denominators positive
        lhs = x.numerator * y.denominator
        rhs = y.numerator * x.denominator
        if lhs < rhs:
            return Ordering.LESS
        return Ordering.EQUAL if lhs == rhs else Ordering.GREATER
    raise ValueError(f"unknown operation {op!r}")


# --- periodic decimals ---------------------------------------------------------

# Digit lists are strings over "0".."9", so periods with hundreds of
# thousands of digits are built, checked and compared in bulk.

def _digit_string(seq) -> str:
    if isinstance(seq, str):
        return seq
    digits = tuple(seq)
    if any(not isinstance(d, int) or not 0 <= d <= 9 for d in digits):
        raise InvalidDigit(f"decimal digits must lie in 0..9: {digits!r}")
    return "".join(map(str, digits))


def _is_digit_string(s: str) -> bool:
    # deleting the digit bytes is far faster than str.isdigit on long strings
    return s.isascii() and not s.encode("ascii").translate(None, b"0123456789")


@dataclass(frozen=True)
class PeriodicDecimal:
    """sign * integer_part.preperiod(period); digit lists are strings such as "142857"."""
    sign: int
    integer_part: int
    preperiod: str = ""
    period: str = ""

    def __post_init__(self):
        object.__setattr__(self, "preperiod", _digit_string(self.preperiod))
        object.__setattr__(self, "period", _digit_string(self.period))

    def __str__(self) -> str:
        s = ("+" if self.sign > 0 else "-") + str(self.integer_part)
        if self.preperiod or self.period:
            s += "." + self.preperiod
            if self.period:
                s += "(" + self.period + ")"
        return s

    @classmethod
    def parse(cls, text: str) -> "PeriodicDecimal":
        m = re.fullmatch(r"\s*([+-]?)(\d+)(?:\.(\d*)(?:\((\d+)\))?)?\s*", text)
        if not m:
            raise ValueError(f"not a periodic decimal: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        return cls(sign, int(m.group(2)), m.group(3) or "", m.group(4) or "")


# Above this size the 10-free part of a denominator is not factored; the
# period is then found by plain long division instead.
ORDER_FACTOR_LIMIT = 10 ** 12


_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def _factor(n: int) -> dict:
    """Prime factorization by trial division."""
    out = {}

    def divide(p):
        nonlocal n
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p

    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        divide(p)
    else:
        p = _SMALL_PRIMES[-1] + 2
        while p * p <= n:
            divide(p)
            p += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def _order_of_ten(d: int) -> int:
    """Multiplicative order of 10 modulo d > 1, d coprime to 10."""
    lam = 1
    for p, k in _factor(d).items():
        lam = math.lcm(lam, p ** (k - 1) * (p - 1))
    order = lam
    for q in _factor(lam):
        while order % q == 0 and pow(10, order // q, d) == 1:
            order //= q
    return order


def _split_twos_fives(d: int):
    """(core, s): d = 2^a 5^b core with core coprime to 10 and s = max(a, b)."""
    a = b = 0
    while d % 2 == 0:
        d //= 2
        a += 1
    while d % 5 == 0:
        d //= 5
        b += 1
    return d, max(a, b)


def _padded_digits(n: int, length: int) -> str:
    """The decimal digits of 0 <= n < 10^length, zero-padded on the left."""
    if length == 0:
        return ""
    ctx = decimal.Context(prec=length + 10, Emax=decimal.MAX_EMAX, Emin=decimal.MIN_EMIN)
    text = str(ctx.create_decimal(n)) if n.bit_length() > 12000 else str(n)
    return text.zfill(length)


def _period_digits(u: int, d: int) -> str:
    """Period of u/d for 0 < u < d, d > 1 coprime to 10: the integer u (10^L - 1) / d.

    Since u/d < 1 that integer is also floor(u 10^L / d), which skips a subtraction.
    """
    length = _order_of_ten(d)
    ctx = decimal.Context(prec=length + u.bit_length() // 3 + 10, Emax=decimal.MAX_EMAX,
                          Emin=decimal.MIN_EMIN, traps=[decimal.Inexact])
    whole = ctx.divide_int(ctx.scaleb(ctx.create_decimal(u), length), d)
    return str(whole).zfill(length)


def _long_division(r: int, den: int):
    """(preperiod, period) of r/den by long division with remainder-cycle detection."""
    digits = []
    seen = {}
    while r and r not in seen:
        seen[r] = len(digits)
        d, r = divmod(10 * r, den)
        digits.append(str(d))
    if not r:
        return "".join(digits), ""
    start = seen[r]
    return "".join(digits[:start]), "".join(digits[start:])


def to_periodic_decimal(x) -> PeriodicDecimal:
    """Exact expansion: preperiod from the powers of 2 and 5 in the denominator,
    period length from the order of 10 modulo the rest."""
    x = as_rational(x)
    sign = -1 if x < 0 else 1
    num, den = abs(x.numerator), x.denominator
    ip, r = divmod(num, den)
    core, s = _split_twos_fives(den)
    if core > ORDER_FACTOR_LIMIT:
        return PeriodicDecimal(sign, ip, *_long_division(r, den))
    head, rest = divmod(r * 10 ** s, den)
    preperiod = _padded_digits(head, s)
    if rest == 0:
        return PeriodicDecimal(sign, ip, preperiod)
    g = math.gcd(rest, den)
    return PeriodicDecimal(sign, ip, preperiod, _period_digits(rest // g, den // g))


def _digits_value(digits: str) -> int:
    """The integer spelled by a digit string; halves are combined to stay subquadratic."""
    if len(digits) <= 1000:
        return int(digits or "0")
    half = len(digits) // 2
    return (_digits_value(digits[:half]) * 10 ** (len(digits) - half)
            + _digits_value(digits[half:]))


def _simplest_between(lo_n: int, lo_d: int, hi_n: int, hi_d: int) -> Fraction:
    """The rational of least denominator in [lo_n/lo_d, hi_n/hi_d], 0 <= lo <= hi.

    Both endpoints are expanded as continued fractions until they part; the
    convergent recurrences p_k = a_k p_(k-1) + p_(k-2) run alongside.
    """
    p_prev, p, q_prev, q = 0, 1, 1, 0
    while True:
        a = lo_n // lo_d
        if a * lo_d == lo_n:
            break
        if (a + 1) * hi_d <= hi_n:
            a += 1
            break
        p_prev, p, q_prev, q = p, a * p + p_prev, q, a * q + q_prev
        lo_n, lo_d, hi_n, hi_d = hi_d, hi_n - a * hi_d, lo_d, lo_n - a * lo_d
    return Fraction(a * p + p_prev, a * q + q_prev)


# Long periods are decoded by reconstructing the value from a short prefix
# and confirming it by re-encoding; a value with denominator D is recovered
# whenever D^2 < 10^(preperiod + RECONSTRUCT_DIGITS).
RECONSTRUCT_MIN_PERIOD = 64
RECONSTRUCT_DIGITS = 40


def _reconstruct(pd: PeriodicDecimal):
    prefix = pd.preperiod + pd.period[:RECONSTRUCT_DIGITS]
    scale = 10 ** len(prefix)
    low = _digits_value(prefix)
    frac = _simplest_between(low, scale, low + 1, scale)
    core, s = _split_twos_fives(frac.denominator)
    if (s != len(pd.preperiod) or core > ORDER_FACTOR_LIMIT
            or pow(10, len(pd.period), core) != 1 % core):
        return None
    value = pd.sign * (pd.integer_part + frac)
    return value if to_periodic_decimal(value) == pd else None


def from_periodic_decimal(pd: PeriodicDecimal) -> Fraction:
    """Exact value of a canonical periodic decimal.

    Long periods are recovered as the simplest rational matching a short
    prefix, accepted only when its own expansion equals pd exactly; any other
    input is evaluated as a geometric series PER / (10^|PER| - 1).
    """
    if pd.sign not in (1, -1) or pd.integer_part < 0:
        raise NonCanonical("sign must be +1 or -1 and the integer part nonnegative")
    if (len(pd.period) > RECONSTRUCT_MIN_PERIOD and _is_digit_string(pd.preperiod)
            and _is_digit_string(pd.period[:RECONSTRUCT_DIGITS])):
        value = _reconstruct(pd)
        if value is not None:
            return value  # pd equals a canonical expansion, so it is valid
    if not (_is_digit_string(pd.preperiod) and _is_digit_string(pd.period)):
        raise InvalidDigit("decimal digits must lie in 0..9")
    if pd.period and not pd.period.lstrip("9"):
        raise NonCanonical("all-9 period: use the terminating twin")
    if pd.sign < 0 and pd.integer_part == 0 and not (pd.preperiod + pd.period).strip("0"):
        raise NonCanonical("zero carries sign +1")
    pre = _digits_value(pd.preperiod)
    value = Fraction(pd.integer_part) + Fraction(pre, 10 ** len(pd.preperiod))
    if pd.period:
        per = _digits_value(pd.period)
        value += Fraction(per, 10 ** len(pd.preperiod) * (10 ** len(pd.period) - 1))
    return pd.sign * value


def near_decimal_partner(pd: PeriodicDecimal) -> PeriodicDecimal:
    """The all-9 twin of a nonzero terminating decimal, e.g. 0.5 -> 0.4(9).

    The result is deliberately non-canonical; from_periodic_decimal rejects it.
    """
    if pd.period:
        raise ValueError("only terminating decimals have a near-decimal partner")
    if pd.integer_part == 0 and not pd.preperiod.strip("0"):
        raise ValueError("0 has no near-decimal partner")
    frac = pd.preperiod.rstrip("0")
    # subtract one unit in the last place, then append 9 forever
    value = int(str(pd.integer_part) + frac) - 1
    text = str(value).rjust(len(frac) + 1, "0")
    ip = int(text[:len(text) - len(frac)])
    pre = text[len(text) - len(frac):] if frac else ""
    return PeriodicDecimal(pd.sign, ip, pre, "9")


# --- base-q words --------------------------------------------------------------

_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class BaseQWord:
    base: int
    digits: tuple  # most significant first

    def __str__(self) -> str:
        if self.base <= len(_ALPHABET):
            return "".join(_ALPHABET[d] for d in self.digits)
        return ",".join(map(str, self.digits))

    @classmethod
    def parse(cls, text: str, base: int) -> "BaseQWord":
        text = text.strip().lower()
        if base > len(_ALPHABET) or "," in text:
            return cls(base, tuple(int(t) for t in text.split(",")))
        digits = []
        for c in text:
            if c not in _ALPHABET:
                raise InvalidDigit(f"bad digit {c!r}")
            digits.append(_ALPHABET.index(c))
        return cls(base, tuple(digits))


def base_q_encode(n: int, q: int) -> BaseQWord:
    if q < 2:
        raise ValueError("base must be at least 2")
    if n < 0:
        raise ValueError("only nonnegative integers are encoded")
    digits = []
    while True:
        n, d = divmod(n, q)
        digits.append(d)
        if n == 0:
            break
    return BaseQWord(q, tuple(reversed(digits)))


def base_q_decode(w: BaseQWord) -> int:
    if w.base < 2:
        raise ValueError("base must be at least 2")
    if not w.digits:
        raise InvalidDigit("empty word")
    for d in w.digits:
        if not 0 <= d < w.base:
            raise InvalidDigit(f"digit {d} is not below base {w.base}")
    if w.digits[0] == 0 and len(w.digits) > 1:
        raise LeadingZero("leading digit 0")
    n = 0
    for d in w.digits:
        n = n * w.base + d
    return n


def base_q_codec(direction: str, value, q: int):
    if direction == "encode":
        return base_q_encode(value, q)
    if direction == "decode":
        w = value if isinstance(value, BaseQWord) else BaseQWord.parse(str(value), q)
        if w.base != q:
            raise ValueError("word base differs from q")
        return base_q_decode(w)
    raise ValueError(f"unknown direction {direction!r}")


# --- quadratic surds and continued fractions --------------------------------------

def _squarefree_split(n: int):
    """Write n = k^2 * d with d squarefree."""
    k, d = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return k, d * n


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number (a + b*sqrt(d)) / c."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.b == 0:
            raise ValueError("b = 0 is a rational, not a surd")
        if self.d < 2 or _squarefree_split(self.d)[0] != 1:
            raise ValueError("d must be a squarefree integer >= 2")
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            raise ValueError("gcd(a, b, c) must be 1")

    @classmethod
    def make(cls, a: int, b: int, c: int, n: int) -> "QuadraticSurd":
        """Normalise (a + b*sqrt(n)) / c for any positive non-square n."""
        k, d = _squarefree_split(n)
        b *= k
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        return cls(a // g, b // g, c // g, d)

    def __str__(self) -> str:
        b = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        root = f"{b}sqrt({self.d})"
        if self.a == 0:
            num = ("-" if self.b < 0 else "") + root
        else:
            num = f"{self.a} {'-' if self.b < 0 else '+'} {root}"
        if self.c == 1:
            return num
        return f"({num})/{self.c}"

    def floor(self) -> int:
        # floor((a + b sqrt d) / c) via exact integer square roots
        s = b_sqrt_floor(self.b, self.d)
        return (self.a + s) // self.c


def b_sqrt_floor(b: int, d: int) -> int:
    """floor(b * sqrt(d)) for squarefree d >= 2."""
    r = math.isqrt(b * b * d)
    return r if b > 0 else -r - 1


@dataclass(frozen=True)
class ContinuedFraction:
    """[c0; partials, ~period]; ``period`` empty means the CF is finite."""
    c0: int
    partials: tuple = ()
    period: tuple = ()

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def period_start(self):
        """1-based index of the first periodic partial, or None."""
        return len(self.partials) + 1 if self.period else None

    def partial(self, i: int) -> int:
        """The i-th partial quotient (i >= 1), unrolling the period."""
        if i <= len(self.partials):
            return self.partials[i - 1]
        if not self.period:
            raise NotEnoughTerms(f"finite continued fraction has {len(self.partials)} partials")
        return self.period[(i - 1 - len(self.partials)) % len(self.period)]

    def __str__(self) -> str:
        items = [str(a) for a in self.partials]
        if self.period:
            per = [str(a) for a in self.period]
            per[0] = "~" + per[0]
            items += per
        if not items:
            return f"[{self.c0}]"
        return f"[{self.c0}; " + ", ".join(items) + "]"

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        m = re.fullmatch(r"\s*\[\s*([+-]?\d+)\s*(?:;(.*))?\]\s*", text)
        if not m:
            raise ValueError(f"not a continued fraction: {text!r}")
        c0 = int(m.group(1))
        pre, per = [], []
        if m.group(2) and m.group(2).strip():
            target = pre
            for tok in m.group(2).split(","):
                tok = tok.strip()
                if tok.startswith("~"):
                    target = per
                    tok = tok[1:]
                if not tok.isdigit() or int(tok) < 1:
                    raise ValueError(f"bad partial quotient {tok!r}")
                target.append(int(tok))
        return cls(c0, tuple(pre), tuple(per))


def _cf_rational(x: Fraction) -> ContinuedFraction:
    num, den = x.numerator, x.denominator
    c0, r = divmod(num, den)
    parts = []
    num, den = den, r
    while den:
        q, r = divmod(num, den)
        parts.append(q)
        num, den = den, r
    # Euclid already ends with a partial >= 2 except for the trivial 1/1 case
    if parts and parts[-1] == 1 and len(parts) > 1:
        parts[-2] += 1
        parts.pop()
    elif parts == [1]:
        return ContinuedFraction(c0 + 1)
    return ContinuedFraction(c0, tuple(parts))


def _cf_surd(s: QuadraticSurd, max_terms: int) -> ContinuedFraction:
    # state (P + sqrt(D)) / Q with Q | D - P^2
    D = s.b * s.b * s.d
    P, Q = (s.a, s.c) if s.b > 0 else (-s.a, -s.c)
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    r = math.isqrt(D)
    terms = []
    seen = {}
    while (P, Q) not in seen:
        if len(terms) > max_terms:
            raise BudgetExceeded(f"no period found within {max_terms} partial quotients")
        seen[(P, Q)] = len(terms)
        a = (P + r) // Q if Q > 0 else (P + r + 1) // Q
        terms.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    c0 = terms[0]
    if start == 0:
        # purely periodic: the cycle re-enters at c0's state
        return ContinuedFraction(c0, (), tuple(terms[1:]) + (terms[0],))
    return ContinuedFraction(c0, tuple(terms[1:start]), tuple(terms[start:]))


def cfrac_encode(x, max_terms: int = 1000) -> ContinuedFraction:
    """Continued fraction of a rational (Euclid) or quadratic surd (P-Q recurrence)."""
    if isinstance(x, QuadraticSurd):
        return _cf_surd(x, max_terms)
    return _cf_rational(as_rational(x))


def cfrac_convergents(cf: ContinuedFraction, k: int) -> list:
    """Convergents d_1..d_k with d_j = [c0; a_1, ..., a_j].

    A CF without partials has the single convergent c0.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not cf.partials and not cf.period:
        if k > 1:
            raise NotEnoughTerms("integer continued fraction has one convergent")
        return [Fraction(cf.c0)]
    if cf.is_finite and k > len(cf.partials):
        raise NotEnoughTerms(f"only {len(cf.partials)} partial quotients available")
    # standard recurrence h_j = a_j h_{j-1} + h_{j-2}
    h_prev, h = 1, cf.c0
    k_prev, kk = 0, 1
    out = []
    for j in range(1, k + 1):
        a = cf.partial(j)
        h_prev, h = h, a * h + h_prev
        k_prev, kk = kk, a * kk + k_prev
        out.append(Fraction(h, kk))
    return out


def babylonian_sqrt2(n: int) -> Fraction:
    """a_1 = 1, a_n = a_{n-1}/2 + 1/a_{n-1}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a = Fraction(1)
    for _ in range(n - 1):
        a = a / 2 + 1 / a
    return a
