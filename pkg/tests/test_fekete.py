from collections import deque
from fractions import Fraction as F

import pytest

from analysis_kernel.errors import BudgetExceeded, CertificateViolated
from analysis_kernel.fekete import (SUBADDITIVE, SUBMULTIPLICATIVE, SUPERADDITIVE,
                                    SUPERMULTIPLICATIVE, fekete_estimate, first_violation,
                                    saw_count, saw_table)


def saw_count_bfs(n: int) -> int:
    """Oracle: breadth-first growth of all walks, each carrying its own path."""
    frontier = deque([((0, 0),)])
    for _ in range(n):
        grown = deque()
        for path in frontier:
            x, y = path[-1]
            for nxt in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nxt not in path:
                    grown.append(path + (nxt,))
        frontier = grown
    return len(frontier)


def test_saw_examples():
    assert [saw_count(n) for n in range(4)] == [1, 4, 12, 36]


@pytest.mark.parametrize("n", range(11))
def test_saw_matches_breadth_first_oracle(n):
    assert saw_count(n) == saw_count_bfs(n)


def test_saw_is_below_all_walks_and_submultiplicative():
    counts = [saw_count(n) for n in range(13)]
    assert all(c <= 4 ** n for n, c in enumerate(counts))
    for m in range(13):
        for n in range(13 - m):
            assert counts[m + n] <= counts[m] * counts[n]


def test_saw_budget():
    with pytest.raises(BudgetExceeded):
        saw_count(15)
    with pytest.raises(ValueError):
        saw_count(-1)


def test_kappa_bounds():
    rows = saw_table(12)
    bounds = [row[3] for row in rows]
    assert all(a >= b for a, b in zip(bounds, bounds[1:]))
    for n, count, root, _ in rows:
        assert root.lo ** n <= count <= root.hi ** n
    # early ratios overshoot kappa (saw(2)/saw(1) = 3), so compare index by index
    counts = [1] + [row[1] for row in rows]
    for n in range(1, 13):
        assert bounds[n - 1] >= F(counts[n], counts[n - 1])


def test_identity_sequence_is_both_sub_and_superadditive():
    for mode in (SUBADDITIVE, SUPERADDITIVE):
        report = fekete_estimate(lambda n: n, mode, 10)
        assert report.certificate_ok and report.normalized == [1] * 10


def test_two_n_minus_one_is_superadditive():
    report = fekete_estimate(lambda n: 2 * n - 1, SUPERADDITIVE, 20)
    assert report.certificate_ok
    assert report.bound == [F(2 * n - 1, n) for n in range(1, 21)]  # rising toward 2
    with pytest.raises(CertificateViolated) as err:
        fekete_estimate(lambda n: 2 * n - 1, SUBADDITIVE, 20)
    assert err.value.witness == (1, 1)


def test_violation_pair_is_reported():
    with pytest.raises(CertificateViolated) as err:
        fekete_estimate(lambda n: n * n, SUBADDITIVE, 10)
    assert err.value.witness == (1, 1)
    report = fekete_estimate(lambda n: n * n, SUBADDITIVE, 10, strict=False)
    assert not report.certificate_ok and report.violation == (1, 1)


def test_first_violation_scans_by_total_then_m():
    prefix = [F(1), F(2), F(3), F(5)]  # a_4 = 5 > a_1 + a_3 = 4
    assert first_violation(prefix, SUBADDITIVE) == (1, 3)


def test_multiplicative_modes():
    report = fekete_estimate(lambda n: 3 ** n + 1, SUPERMULTIPLICATIVE, 8, strict=False)
    assert not report.certificate_ok
    report = fekete_estimate(lambda n: 2 ** n, SUBMULTIPLICATIVE, 8)
    assert all(r.lo <= 2 <= r.hi for r in report.normalized)
    report = fekete_estimate(lambda n: saw_count(n), SUBMULTIPLICATIVE, 10)
    assert report.certificate_ok
    assert report.bound[-1] == saw_table(10)[-1][3]


def test_bad_arguments():
    with pytest.raises(ValueError):
        fekete_estimate(lambda n: n, "Sideways", 5)
    with pytest.raises(ValueError):
        fekete_estimate(lambda n: n, SUBADDITIVE, 1)
