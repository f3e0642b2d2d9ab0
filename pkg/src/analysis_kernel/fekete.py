"""Fekete limits of sub/super-additive sequences and self-avoiding walk counts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from . import intervals as iv
from .errors import BudgetExceeded, CertificateViolated

SUBADDITIVE = "Subadditive"
SUPERADDITIVE = "Superadditive"
SUBMULTIPLICATIVE = "Submultiplicative"
SUPERMULTIPLICATIVE = "Supermultiplicative"
MODES = (SUBADDITIVE, SUPERADDITIVE, SUBMULTIPLICATIVE, SUPERMULTIPLICATIVE)

SAW_MAX_N = 14
ROOT_BITS = 64


@dataclass
class FeketeReport:
    mode: str
    prefix: List[Fraction]
    normalized: list  # a_n/n (additive) or enclosures of a_n^(1/n) (multiplicative)
    bound: list  # running inf (sub) or sup (super) of the normalized values
    certificate_ok: bool
    violation: tuple = None  # first violating (m, n), if any


def _holds(mode: str, whole: Fraction, a: Fraction, b: Fraction) -> bool:
    if mode == SUBADDITIVE:
        return whole <= a + b
    if mode == SUPERADDITIVE:
        return whole >= a + b
    if mode == SUBMULTIPLICATIVE:
        return whole <= a * b
    return whole >= a * b


def first_violation(prefix: List[Fraction], mode: str):
    """First (m, n) with m + n <= N breaking the mode's inequality.

    Pairs are scanned by increasing m + n, then increasing m.
    """
    big = len(prefix)
    for s in range(2, big + 1):
        for m in range(1, s):
            if not _holds(mode, prefix[s - 1], prefix[m - 1], prefix[s - m - 1]):
                return (m, s - m)
    return None


def fekete_estimate(seq: Callable[[int], Fraction], mode: str, big_n: int,
                    strict: bool = True) -> FeketeReport:
    """Check the mode's inequality on all m + n <= N and report a_n/n (or a_n^(1/n)).

    For sub-modes each normalized value bounds the limit from above and the
    running minimum is reported; super-modes are dual.  With strict=True a
    violation raises CertificateViolated carrying the pair (m, n).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if big_n < 2:
        raise ValueError("N must be at least 2")
    prefix = [Fraction(seq(n)) for n in range(1, big_n + 1)]
    bad = first_violation(prefix, mode)
    if bad is not None and strict:
        m, n = bad
        raise CertificateViolated(
            f"{mode.lower()} inequality fails at (m, n) = ({m}, {n}): "
            f"a_{m + n} = {prefix[m + n - 1]}, a_{m} = {prefix[m - 1]}, a_{n} = {prefix[n - 1]}",
            witness=bad)
    sub = mode in (SUBADDITIVE, SUBMULTIPLICATIVE)
    if mode in (SUBADDITIVE, SUPERADDITIVE):
        normalized = [a / n for n, a in enumerate(prefix, 1)]
        keys = normalized
    else:
        if any(a <= 0 for a in prefix):
            raise ValueError("multiplicative modes need positive terms")
        normalized = [iv.root_point(a, n, ROOT_BITS) for n, a in enumerate(prefix, 1)]
        keys = [r.hi if sub else r.lo for r in normalized]
    bound, best = [], None
    for k in keys:
        best = k if best is None else (min(best, k) if sub else max(best, k))
        bound.append(best)
    return FeketeReport(mode, prefix, normalized, bound, bad is None, bad)


_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def saw_count(n: int, max_n: int = SAW_MAX_N) -> int:
    """Self-avoiding walks of length n on the square lattice from the origin (DFS)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise BudgetExceeded(f"saw_count({n}) exceeds the enumeration budget {max_n}")
    visited = {(0, 0)}

    def walks(x, y, left):
        if left == 0:
            return 1
        total = 0
        for dx, dy in _STEPS:
            nxt = (x + dx, y + dy)
            if nxt not in visited:
                visited.add(nxt)
                total += walks(nxt[0], nxt[1], left - 1)
                visited.remove(nxt)
        return total

    return walks(0, 0, n)


def saw_table(max_n: int):
    """Rows (n, saw(n), enclosure of saw(n)^(1/n), running upper bound on kappa)."""
    rows, best = [], None
    for n in range(1, max_n + 1):
        c = saw_count(n)
        root = iv.root_point(Fraction(c), n, ROOT_BITS)
        best = root.hi if best is None else min(best, root.hi)
        rows.append((n, c, root, best))
    return rows
