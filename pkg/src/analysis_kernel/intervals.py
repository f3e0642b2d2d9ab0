"""Certified interval arithmetic over dyadic rationals.

Every function takes a working precision ``w`` (bits after the binary
point) and returns an ``Interval`` guaranteed to contain the exact real
result.  Endpoints are rounded outward to multiples of ``2**-w``, so
intermediate denominators stay bounded.  Elementary functions are summed
from their Taylor series with explicit remainder bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

ZERO = Fraction(0)
ONE = Fraction(1)


def _dn(x: Fraction, w: int) -> Fraction:
    return Fraction((x.numerator << w) // x.denominator, 1 << w)


def _up(x: Fraction, w: int) -> Fraction:
    return Fraction(-((-x.numerator << w) // x.denominator), 1 << w)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def magnitude(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def round_out(self, w: int) -> "Interval":
        return Interval(_dn(self.lo, w), _up(self.hi, w))

    def __str__(self) -> str:
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def hull(*xs: Interval) -> Interval:
    return Interval(min(x.lo for x in xs), max(x.hi for x in xs))


# --- arithmetic --------------------------------------------------------------

def add(a: Interval, b: Interval, w: int) -> Interval:
    return Interval(_dn(a.lo + b.lo, w), _up(a.hi + b.hi, w))


def neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def sub(a: Interval, b: Interval, w: int) -> Interval:
    return add(a, neg(b), w)


def mul(a: Interval, b: Interval, w: int) -> Interval:
    if a.lo >= 0 and b.lo >= 0:
        return Interval(_dn(a.lo * b.lo, w), _up(a.hi * b.hi, w))
    ps = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(_dn(min(ps), w), _up(max(ps), w))


def div(a: Interval, b: Interval, w: int) -> Interval:
    if b.lo <= 0 <= b.hi:
        raise ZeroDivisionError("divisor interval contains 0")
    qs = (a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi)
    return Interval(_dn(min(qs), w), _up(max(qs), w))


def scale(a: Interval, c: Fraction, w: int) -> Interval:
    if c >= 0:
        return Interval(_dn(a.lo * c, w), _up(a.hi * c, w))
    return Interval(_dn(a.hi * c, w), _up(a.lo * c, w))


def powint(a: Interval, m: int, w: int) -> Interval:
    if m < 0:
        return div(Interval.point(1), powint(a, -m, w + 8), w)
    if m == 0:
        return Interval.point(1)
    lo, hi = a.lo ** m, a.hi ** m
    if m % 2:
        return Interval(_dn(lo, w), _up(hi, w))
    if a.lo >= 0:
        return Interval(_dn(lo, w), _up(hi, w))
    if a.hi <= 0:
        return Interval(_dn(hi, w), _up(lo, w))
    return Interval(ZERO, _up(max(lo, hi), w))


# --- roots ---------------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for a nonnegative integer n."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # 2**ceil(bits/k) >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_point(x: Fraction, k: int, w: int) -> Interval:
    """Enclosure of the real k-th root of x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    scaled = x * (1 << (k * w))
    n = scaled.numerator // scaled.denominator
    r = iroot(n, k)
    lo = Fraction(r, 1 << w)
    if r ** k == scaled:
        return Interval(lo, lo)
    return Interval(lo, Fraction(r + 1, 1 << w))


def sqrt_point(x: Fraction, w: int) -> Interval:
    return root_point(x, 2, w)


def powrat_point(x: Fraction, a: Fraction, w: int) -> Interval:
    """Enclosure of x ** a for x >= 0 (x > 0 when a < 0)."""
    if x == 0:
        if a <= 0:
            raise ZeroDivisionError("0 to a nonpositive power")
        return Interval.point(0)
    p, q = a.numerator, a.denominator
    base = x ** abs(p)
    # extra bits so the reciprocal of a small root still meets the target
    extra = max(0, base.denominator.bit_length() - base.numerator.bit_length()) // q + 4
    r = root_point(base, q, w + extra)
    if p > 0:
        return r.round_out(w) if r.lo != r.hi else r
    if r.lo == 0:
        return powrat_point(x, a, 2 * w + 16)
    return Interval(_dn(1 / r.hi, w), _up(1 / r.lo, w))


def powrat(a: Interval, e: Fraction, w: int) -> Interval:
    if a.lo < 0:
        raise ValueError("negative base")
    lo, hi = powrat_point(a.lo, e, w), powrat_point(a.hi, e, w)
    if e > 0:
        return Interval(lo.lo, hi.hi)
    return Interval(hi.lo, lo.hi)


# --- exp / log -----------------------------------------------------------------

# Series are summed in fixed point: integers at scale 2^g, g a little above
# the working precision. Sums are exact; each product rounds outward by at
# most one unit, which the extra bits absorb.

def _series_bits(wp: int) -> int:
    return wp + wp.bit_length() + 6


def _fx(x: Fraction, g: int):
    """Integer enclosure (floor, ceil) of x * 2^g."""
    n = x.numerator << g
    return n // x.denominator, -(-n // x.denominator)


def _fx_times(lo: int, hi: int, num: int, den: int):
    """Outward enclosure of [lo, hi] * num/den, den > 0."""
    if num < 0:
        lo, hi = hi, lo
    return lo * num // den, -(-hi * num // den)


def _fx_out(lo: int, hi: int, g: int, w: int) -> Interval:
    """[lo, hi] * 2^-g rounded outward to 2^-w, g >= w."""
    d = g - w
    return Interval(Fraction(lo >> d, 1 << w), Fraction(-(-hi >> d), 1 << w))


def exp_point(x: Fraction, w: int) -> Interval:
    x = Fraction(x)
    if x == 0:
        return Interval.point(1)
    s = 0
    r = x
    while abs(r) > Fraction(1, 2):
        r /= 2
        s += 1
    mag = max(0, int(x * 3 / 2) + 1) + abs(int(x)).bit_length()  # log2 e < 3/2
    wp = w + 2 * s + mag + 12
    g = _series_bits(wp)
    eps = 1 << (g - wp)
    lo = hi = 1 << g
    total_lo = total_hi = 0
    i = 0
    while max(abs(lo), abs(hi)) > eps:
        total_lo += lo
        total_hi += hi
        i += 1
        lo, hi = _fx_times(lo, hi, r.numerator, r.denominator * i)
    tail = 2 * max(abs(lo), abs(hi))
    lo, hi = total_lo - tail, total_hi + tail
    for _ in range(s):
        lo, hi = lo * lo >> g, -(-hi * hi >> g)
    return _fx_out(lo, hi, g, w)


def exp(a: Interval, w: int) -> Interval:
    return Interval(exp_point(a.lo, w).lo, exp_point(a.hi, w).hi)


def _atanh_series(t: Fraction, wp: int) -> Interval:
    """2*atanh(t) for 0 <= t <= 1/3."""
    if t == 0:
        return Interval.point(0)
    g = _series_bits(wp)
    eps = 1 << (g - wp)
    t2 = t * t
    lo, hi = _fx(t, g)
    total_lo = total_hi = 0
    k = 1
    while hi > eps:
        a, b = _fx_times(lo, hi, 2, k)
        total_lo += a
        total_hi += b
        lo, hi = _fx_times(lo, hi, t2.numerator, t2.denominator)
        k += 2
    tail = 3 * hi  # 2 p / (k (1 - t^2)) <= 3 p
    return _fx_out(total_lo - tail, total_hi + tail, g, wp)


@lru_cache(maxsize=64)
def log2_const(w: int) -> Interval:
    return _atanh_series(Fraction(1, 3), w + 4).round_out(w)


def log_point(x: Fraction, w: int) -> Interval:
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of nonpositive number")
    if x == 1:
        return Interval.point(0)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2) ** e
    if m < 1:
        m *= 2
        e -= 1
    elif m >= 2:
        m /= 2
        e += 1
    wp = w + abs(e).bit_length() + 8
    lm = _atanh_series((m - 1) / (m + 1), wp)
    res = add(scale(log2_const(wp), Fraction(e), wp), lm, wp)
    return res.round_out(w)


def log(a: Interval, w: int) -> Interval:
    if a.lo <= 0:
        raise ValueError("log of interval touching nonpositive numbers")
    return Interval(log_point(a.lo, w).lo, log_point(a.hi, w).hi)


# --- arctan / pi ---------------------------------------------------------------

def _atan_series(z: Fraction, wp: int) -> Interval:
    """arctan z for 0 <= z <= 1/4 by the alternating Taylor series."""
    if z == 0:
        return Interval.point(0)
    g = _series_bits(wp)
    eps = 1 << (g - wp)
    z2 = z * z
    lo, hi = _fx(z, g)
    total_lo = total_hi = 0
    k = 1
    sign = 1
    while hi // k > eps:
        a, b = _fx_times(lo, hi, sign, k)
        total_lo += a
        total_hi += b
        lo, hi = _fx_times(lo, hi, z2.numerator, z2.denominator)
        k += 2
        sign = -sign
    tail = -(-hi // k)
    return _fx_out(total_lo - tail, total_hi + tail, g, wp)


@lru_cache(maxsize=64)
def pi_const(w: int) -> Interval:
    wp = w + 8
    a = _atan_series(Fraction(1, 5), wp)
    b = _atan_series(Fraction(1, 239), wp)
    return sub(scale(a, Fraction(16), wp), scale(b, Fraction(4), wp), wp).round_out(w)


def _halve_angle(v: Fraction, wp: int, upper: bool) -> Fraction:
    """Bound of v / (1 + sqrt(1 + v^2)), i.e. tan(arctan(v)/2), for v >= 0."""
    s = sqrt_point(1 + v * v, wp)
    return _up(v / (1 + s.lo), wp) if upper else _dn(v / (1 + s.hi), wp)


def atan_point(x: Fraction, w: int) -> Interval:
    x = Fraction(x)
    if x == 0:
        return Interval.point(0)
    if x < 0:
        return neg(atan_point(-x, w))
    wp = w + 10
    if x > 1:
        inner = atan_point(1 / x, wp)
        half_pi = scale(pi_const(wp), Fraction(1, 2), wp)
        return sub(half_pi, inner, wp).round_out(w)
    lo, hi = x, x
    for _ in range(2):
        lo, hi = _halve_angle(lo, wp, False), _halve_angle(hi, wp, True)
    a, b = _atan_series(lo, wp), _atan_series(hi, wp)
    return Interval(_dn(4 * a.lo, w), _up(4 * b.hi, w))


def atan(a: Interval, w: int) -> Interval:
    return Interval(atan_point(a.lo, w).lo, atan_point(a.hi, w).hi)


def asin_point(v: Fraction, w: int) -> Interval:
    v = Fraction(v)
    if abs(v) > 1:
        raise ValueError("arcsin argument outside [-1, 1]")
    if v < 0:
        return neg(asin_point(-v, w))
    if v == 1:
        return scale(pi_const(w + 2), Fraction(1, 2), w)
    if v == 0:
        return Interval.point(0)
    gap = 1 - v * v
    extra = max(0, gap.denominator.bit_length() - gap.numerator.bit_length())
    wp = w + 2 * extra + 10
    s = sqrt_point(gap, wp)
    if s.lo == 0:
        s = sqrt_point(gap, 2 * wp)
    y = Interval(_dn(v / s.hi, wp), _up(v / s.lo, wp))
    return atan(y, w)


def asin(a: Interval, w: int) -> Interval:
    return Interval(asin_point(a.lo, w).lo, asin_point(a.hi, w).hi)


def acos(a: Interval, w: int) -> Interval:
    return sub(scale(pi_const(w + 2), Fraction(1, 2), w + 2), asin(a, w + 2), w)


def acot(a: Interval, w: int) -> Interval:
    return sub(scale(pi_const(w + 2), Fraction(1, 2), w + 2), atan(a, w + 2), w)


# --- sin / cos -----------------------------------------------------------------

def _trig_taylor(x: Fraction, w: int, start: int) -> Interval:
    """sin (start=1) or cos (start=0) of a small rational by Taylor's formula."""
    wp = w + 8
    g = _series_bits(wp)
    eps = 1 << (g - wp)
    x2 = x * x
    lo, hi = _fx(x, g) if start else (1 << g, 1 << g)
    total_lo = total_hi = 0
    k = start
    while True:
        total_lo += lo
        total_hi += hi
        lo, hi = _fx_times(lo, hi, -x2.numerator, x2.denominator * (k + 1) * (k + 2))
        k += 2
        if k > abs(x) and max(abs(lo), abs(hi)) <= eps:
            break
    # Lagrange remainder: |x|^(k)/k! with all derivatives bounded by 1
    tail = max(abs(lo), abs(hi))
    out = _fx_out(total_lo - tail, total_hi + tail, g, w)
    return Interval(max(-ONE, out.lo), min(ONE, out.hi))


def _trig_interval(a: Interval, w: int, start: int) -> Interval:
    if a.lo == a.hi and abs(a.lo) <= 4:
        return _trig_taylor(a.lo, w, start)
    if a.width >= 7:
        return Interval(-ONE, ONE)
    # shift by a multiple of 2*pi so the interval sits near 0
    wp = w + 12 + abs(int(a.lo)).bit_length()
    pi = pi_const(wp)
    k = int((a.mid / (2 * pi.mid)).__round__())
    if k:
        shift = scale(pi, Fraction(2 * k), wp)
        a = Interval(_dn(a.lo - shift.hi, wp), _up(a.hi - shift.lo, wp))
    ends = [_trig_taylor(a.lo, wp, start), _trig_taylor(a.hi, wp, start)]
    lo = min(e.lo for e in ends)
    hi = max(e.hi for e in ends)
    # extrema at multiples of pi/2: sin peaks at pi/2 + 2 pi j, cos at 2 pi j
    peak = Fraction(1, 2) if start else ZERO
    for j in range(-3, 4):
        top = scale(pi, peak + 2 * j, wp)
        bottom = scale(pi, peak + 1 + 2 * j, wp)
        if top.intersects(a):
            hi = ONE
        if bottom.intersects(a):
            lo = -ONE
    return Interval(_dn(lo, w), _up(hi, w))


def sin(a: Interval, w: int) -> Interval:
    return _trig_interval(a, w, 1)


def cos(a: Interval, w: int) -> Interval:
    return _trig_interval(a, w, 0)


def sin_point(x: Fraction, w: int) -> Interval:
    return sin(Interval.point(x), w)


def cos_point(x: Fraction, w: int) -> Interval:
    return cos(Interval.point(x), w)
