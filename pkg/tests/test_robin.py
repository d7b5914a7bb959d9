import random
from fractions import Fraction

import mpmath
import pytest

from oddrobin.arith import Factorization, factorize, n_over_phi, sigma_over_n
from oddrobin.errors import DomainError, UsageError
from oddrobin.primes import odd_primorial
from oddrobin.realbounds import Interval
from oddrobin.robin import (
    check_lemma22,
    check_lemma24,
    check_main_inequality,
    check_primorial,
    check_theorem31_chain,
    primorial_sweep,
)
from oddrobin.verdict import Outcome, certify_lt
from oracles import mp_rhs


def test_equality_at_315():
    v = check_main_inequality(315)
    assert v.outcome is Outcome.HOLDS_WITH_EQUALITY
    assert v.lhs == Fraction(208, 105)


@pytest.mark.parametrize("n, rhs_approx", [(3, 7.95), (9, 1.641)])
def test_small_n_hold(n, rhs_approx):
    v = check_main_inequality(n)
    assert v.outcome is Outcome.HOLDS
    assert float(v.rhs) == pytest.approx(rhs_approx, abs=5e-3)
    assert float(v.rhs) == pytest.approx(float(mp_rhs(n)), rel=1e-12)


def test_main_inequality_errors(table):
    with pytest.raises(UsageError):
        check_main_inequality(12)
    with pytest.raises(DomainError):
        check_main_inequality(1)
    with pytest.raises(DomainError):
        check_main_inequality(Factorization())


def test_unsound_constant_breaks_315():
    assert check_main_inequality(315, C=Fraction(3, 5)).outcome is Outcome.FAILS


def test_huge_factorization_uses_log_sum():
    f = odd_primorial(200).factorization
    assert check_main_inequality(f).outcome is Outcome.HOLDS


def test_primorial_checks(table):
    assert check_primorial(54, table=table).outcome is Outcome.HOLDS
    bridge = table.index_of(20011)
    v = check_primorial(bridge, table=table)
    assert v.outcome is Outcome.HOLDS
    assert v.lhs == n_over_phi(odd_primorial(bridge).factorization)


def test_sweep_rows_and_threshold(table):
    r = primorial_sweep(2, table.index_of(20011), table=table)
    assert len(r) == r.summary["rows"] == table.index_of(20011) - 2 + 1
    assert r.summary["all_hold_from_k54"] is True
    assert r.summary["smallest_k_all_larger_hold"] <= 54
    single = primorial_sweep(54, 54, table=table)
    assert len(single) == 1 and single.verdicts[0].outcome is Outcome.HOLDS


def test_sweep_agrees_with_single_checks(table):
    r = primorial_sweep(40, 70, table=table)
    for k, v in zip(range(40, 71), r.verdicts):
        assert v.outcome is check_primorial(k, table=table).outcome


def test_sweep_rejects_bad_range():
    with pytest.raises(UsageError):
        primorial_sweep(10, 5)


@pytest.mark.parametrize("p", [20011, 20021, 20101])
def test_lemma24_holds(p):
    assert check_lemma24(p).outcome is Outcome.HOLDS


def test_lemma24_hypothesis():
    with pytest.raises(UsageError):
        check_lemma24(19997)


def test_lemma22(table):
    assert check_lemma22(table.index_of(10007)).outcome is Outcome.HOLDS
    assert check_lemma22(table.index_of(20011)).outcome is Outcome.HOLDS
    with pytest.raises(UsageError):
        check_lemma22(table.index_of(9973))


def test_theorem31_chain(table):
    r = check_theorem31_chain(table.index_of(20011))
    assert len(r) == 4
    assert all(v.outcome is Outcome.HOLDS for v in r.verdicts)
    # the step reported as "0.315..." is really C - A c = 0.547... against A * 0.2 = 0.178...
    assert abs(r.summary["coefficient_C_minus_A_c"].mid() - Fraction("0.5472")) < Fraction(1, 10**4)
    assert abs(r.summary["coefficient_A_times_0_2"].mid() - Fraction("0.1781")) < Fraction(1, 10**4)
    with pytest.raises(UsageError):
        check_theorem31_chain(table.index_of(19997))


def test_reduction_soundness(table):
    """Odd n between consecutive odd primorials inherit the primorial verdict."""
    rng = random.Random(7)
    odd_primes = table.primes[1:400]
    for k in (54, 60, 75):
        assert check_primorial(k, table=table).outcome is Outcome.HOLDS
        lo, hi = odd_primorial(k).value, odd_primorial(k + 1).value
        found = 0
        while found < 5:
            exps = {}
            n = 1
            while n < lo:
                p = rng.choice(odd_primes)
                exps[p] = exps.get(p, 0) + 1
                n *= p
            if n < hi:
                f = Factorization.from_pairs(exps.items())
                assert check_main_inequality(f).outcome is Outcome.HOLDS
                found += 1


def test_certify_ladder_escalates():
    # 1/3 vs its 64-bit upper rounding: undecidable at 64 bits, decided at 128
    third = Fraction(1, 3)
    upper64 = Interval.exact(third, 64).hi_q
    v = certify_lt("1/3 < x", lambda prec: Interval.exact(third, prec), lambda prec: Interval.exact(upper64, prec), 64)
    assert v.outcome is Outcome.HOLDS and v.precision_used == 128
    v = certify_lt("1/3 < x", lambda prec: Interval.exact(third, prec), lambda prec: Interval.exact(upper64, prec),
                   64, ladder=False)
    assert v.outcome is Outcome.UNDECIDED


def test_float_sandwich(table):
    """Certified verdicts agree with double precision wherever the float slack is clear."""
    import math

    A = math.exp(0.5772156649015329) / 2
    t = math.log(math.log(315))
    C = (208 / 105 - A * t) * t
    for n in range(3, 3001, 2):
        f = factorize(n, table)
        ln = math.log(math.log(n))
        slack = A * ln + C / ln - float(sigma_over_n(f))
        v = check_main_inequality(f)
        if abs(slack) > 1e-6:
            assert v.ok == (slack > 0)
