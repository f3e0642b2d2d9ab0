"""Dense univariate polynomials over Q (coefficient lists, lowest degree first).

Only what the kernel needs: exact arithmetic, gcd, square-free parts and
Sturm-sequence real-root counting.
"""
from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)


def trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p) -> int:
    return len(trim(p)) - 1  # -1 for the zero polynomial


def padd(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def pneg(p):
    return [-c for c in p]


def psub(p, q):
    return padd(p, pneg(q))


def pmul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def pscale(p, c):
    return trim([c * a for a in p])


def ppow(p, m: int):
    out = [Fraction(1)]
    for _ in range(m):
        out = pmul(out, p)
    return out


def pdivmod(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by 0")
    quot = [ZERO] * max(0, len(p) - len(q) + 1)
    rem = list(p)
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        c = rem[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] -= c * b
        rem = trim(rem)
    return trim(quot), rem


def monic(p):
    p = trim(p)
    return [c / p[-1] for c in p] if p else []


def pgcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, pdivmod(p, q)[1]
    return monic(p)


def pderiv(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def peval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree(p):
    p = trim(p)
    if len(p) <= 1:
        return monic(p)
    return monic(pdivmod(p, pgcd(p, pderiv(p)))[0])


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p) -> int:
    """Number of distinct real roots of p (p nonzero)."""
    p = squarefree(p)
    if len(p) <= 1:
        return 0
    seq = [p, pderiv(p)]
    while True:
        r = pdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(pneg(r))
    at_pos = [s[-1] for s in seq]
    at_neg = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def has_real_root_outside(p, excluded) -> bool:
    """Does p have a real root that is not a root of any polynomial in ``excluded``?"""
    g = squarefree(p)
    if not g:
        return True  # the zero polynomial vanishes everywhere
    for e in excluded:
        e = trim(e)
        if not e:
            continue
        common = pgcd(g, e)
        if len(common) > 1:
            g = pdivmod(g, common)[0]
    return count_real_roots(g) > 0
