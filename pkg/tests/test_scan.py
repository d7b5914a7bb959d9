from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oddrobin.errors import UsageError
from oddrobin.scan import brute_force_scan, min_slack
from oddrobin.verdict import Outcome

from oracles import divisor_sums, encloses, mp_rhs


@pytest.fixture(scope="module")
def full_scan():
    return brute_force_scan(3, 45045)


def test_full_range(full_scan):
    assert full_scan.checked == 22522
    assert full_scan.equality_cases == [315]
    assert not full_scan.violations and not full_scan.undecided
    assert full_scan.outcome is Outcome.HOLDS


def test_full_range_min_slack_against_oracle(full_scan):
    sums = divisor_sums(45045)
    with mpmath.workdps(40):
        slacks = {n: mp_rhs(n, dps=40) - mpmath.mpf(sums[n]) / n for n in range(3, 45046, 2) if n != 315}
    ref_n = min(slacks, key=slacks.get)
    n, slack = min_slack(full_scan)
    assert n == ref_n == 45
    assert encloses(slack, slacks[ref_n], rel=Fraction(1, 10**30))


def test_below_equality_case():
    r = brute_force_scan(3, 313)
    assert r.equality_cases == [] and r.outcome is Outcome.HOLDS
    assert r.checked == 156


def test_single_equality_case():
    r = brute_force_scan(315, 315)
    assert r.equality_cases == [315] and r.checked == 1
    with pytest.raises(UsageError):
        min_slack(r)
    assert r.to_report().verdicts[0].outcome is Outcome.HOLDS_WITH_EQUALITY


def test_small_minimizer():
    with mpmath.workdps(40):
        ref = {n: mp_rhs(n) - mpmath.mpf(s) / n for n, s in [(3, 4), (5, 6), (7, 8), (9, 13), (11, 12), (13, 14)]}
    n, slack = min_slack(brute_force_scan(3, 13))
    assert n == min(ref, key=ref.get) == 9
    assert abs(float(slack.mid()) - 0.19637) < 1e-5


def test_even_endpoints():
    assert brute_force_scan(4, 10).checked == 3
    assert brute_force_scan(3, 4).checked == 1


@pytest.mark.parametrize("lo, hi", [(1, 10), (2, 10), (11, 10), (3, 100001)])
def test_bad_ranges(lo, hi):
    with pytest.raises(UsageError):
        brute_force_scan(lo, hi)


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 1500), st.integers(0, 1500), st.integers(0, 1500))
def test_partition_invariance(lo, a, b):
    mid, hi = lo + a, lo + a + b + 1
    whole = brute_force_scan(lo, hi)
    left, right = brute_force_scan(lo, mid), brute_force_scan(mid + 1, hi)
    for merged in (left.merge(right), right.merge(left)):
        assert merged.checked == whole.checked
        assert merged.equality_cases == whole.equality_cases
        assert merged.min_slack[0] == whole.min_slack[0]


def test_parallel_matches_serial():
    serial = brute_force_scan(3, 9001)
    parallel = brute_force_scan(3, 9001, workers=2)
    assert parallel.to_report().summary == serial.to_report().summary
    assert parallel.min_slack[0] == serial.min_slack[0]


def test_unsound_C_finds_violations():
    r = brute_force_scan(3, 999, C=Fraction(6, 10))
    assert r.outcome is Outcome.FAILS
    assert len(r.violations) > 0
    assert r.equality_cases == []
