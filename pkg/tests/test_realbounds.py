from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddrobin.arith import Factorization
from oddrobin.errors import DomainError
from oddrobin.realbounds import (
    EULER_GAMMA_DIGITS,
    PRECISIONS,
    Interval,
    decimal_string,
    euler_gamma,
    euler_gamma_series,
    exp_gamma_half,
    lemma24_constant,
    lemma24_inner_factor,
    loglog_from_logsum,
    loglog_of_integer,
    main_constant_C,
    rhs_bound,
    robin_constant,
)
from oracles import as_fraction, encloses

# 50-digit reference, independent of the stored 200-digit literal
GAMMA_50 = Fraction("0.57721566490153286060651209008240243104215933593992")


def test_gamma_contains_reference():
    g = euler_gamma(64)
    assert g.decimal(10) == ("5.772156649e-1", "5.772156650e-1")
    assert GAMMA_50 in g
    assert abs(euler_gamma(256).mid() - GAMMA_50) < Fraction(1, 10**49)


def test_gamma_literal_matches_series_and_mpmath():
    assert abs(euler_gamma_series(205) - Fraction(EULER_GAMMA_DIGITS)) < Fraction(1, 10**198)
    with mpmath.workprec(700):
        assert encloses(euler_gamma(512), mpmath.euler, Fraction(1, 2**690))


@pytest.mark.parametrize("precision", PRECISIONS)
def test_gamma_width(precision):
    assert euler_gamma(precision).width() <= Fraction(2) ** (8 - precision)


def test_gamma_nests():
    assert euler_gamma(128).subset_of(euler_gamma(64))
    assert euler_gamma(512).subset_of(euler_gamma(256))


def test_exp_gamma_half():
    # e^gamma = 1.78107241799019798523650410310717954916964521430343...
    assert Fraction("0.890536208995098992618252051553589774584822607") in exp_gamma_half(128)
    assert exp_gamma_half(256).subset_of(exp_gamma_half(128))


@pytest.mark.parametrize("n, approx", [(315, "1.74964717019"), (3, "0.0940478276166"), (12, "0.910235093365")])
def test_loglog_examples(n, approx):
    enc = loglog_of_integer(n, 128)
    assert abs(enc.mid() - Fraction(approx)) < Fraction(1, 10**11)
    with mpmath.workprec(300):
        assert encloses(enc, mpmath.log(mpmath.log(n)), Fraction(1, 2**280))


def test_loglog_of_factorization_matches_int():
    f = Factorization(((3, 2), (5, 1), (7, 1)))
    assert loglog_of_integer(f, 128).overlaps(loglog_of_integer(315, 128))
    assert loglog_from_logsum(Interval.log_of(315, 128)).overlaps(loglog_of_integer(315, 128))


def test_loglog_from_logsum_at_e():
    e = Interval.exact(1, 128).exp()
    assert 1 in loglog_from_logsum(e)


def test_loglog_domain():
    with pytest.raises(DomainError):
        loglog_of_integer(2)
    with pytest.raises(DomainError):
        loglog_from_logsum(Interval.exact(1))
    with pytest.raises(DomainError):
        Interval.hull(-1, 1).log()
    with pytest.raises(DomainError):
        Interval.exact(1) / Interval.hull(-1, 1)


def test_main_constant():
    c = main_constant_C(128).enclosure
    assert c.width() <= Fraction(1, 10**30)
    assert c.subset_of(Interval.hull(Fraction("0.7397"), Fraction("0.7401")))
    assert c.certainly_gt(Fraction("0.6482"))
    assert main_constant_C(256).enclosure.subset_of(c)
    with mpmath.workprec(400):
        t = mpmath.log(mpmath.log(315))
        ref = (mpmath.mpf(208) / 105 - mpmath.exp(mpmath.euler) / 2 * t) * t
        assert encloses(c, ref, Fraction(1, 2**380))


def test_lemma24_constant():
    c = lemma24_constant(128).enclosure
    assert c.decimal(8) == ("2.1626511e-1", "2.1626512e-1")
    assert Fraction("0.21626511") < c.lo_q < Fraction("0.21626512")
    inner = lemma24_inner_factor(128)
    assert Fraction("1.02183726") < inner.lo_q < Fraction("1.02183727")
    limit = lemma24_constant(128, x=None).enclosure
    with mpmath.workprec(300):
        assert encloses(limit, (1 + mpmath.log(2)) / 8, Fraction(1, 2**280))
    assert abs(limit.mid() - Fraction("0.21164")) < Fraction(1, 10**5)


def test_robin_constant():
    assert abs(robin_constant(128).enclosure.mid() - Fraction("0.6482136494")) < Fraction(1, 10**10)


def test_rhs_point():
    x, y = Fraction(3, 7), Fraction(5, 11)
    r = rhs_bound(Interval.exact(1), Interval.exact(x), Interval.exact(y))
    assert x + y in r
    assert r.width() < Fraction(1, 2**120)


def test_rhs_equality_at_315():
    r = rhs_bound(loglog_of_integer(315), exp_gamma_half(128), main_constant_C(128).enclosure)
    assert Fraction(208, 105) in r


def test_rhs_increasing_from_one():
    A, B = exp_gamma_half(128), main_constant_C(128).enclosure
    threshold = (B / A).sqrt()
    assert abs(threshold.mid() - Fraction("0.9114")) < Fraction(1, 10**4)
    assert threshold.certainly_lt(1)
    ts = [Fraction(1) + Fraction(i, 8) for i in range(40)]
    values = [rhs_bound(Interval.exact(t), A, B) for t in ts]
    assert all(a.certainly_lt(b) for a, b in zip(values, values[1:]))


def test_rhs_rejects_zero():
    with pytest.raises(DomainError):
        rhs_bound(Interval.hull(0, 1), Interval.exact(1), Interval.exact(1))


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9)
positive = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6, max_denominator=10**9)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals, st.sampled_from(PRECISIONS))
def test_field_ops_sound(a, b, prec):
    x, y = Interval.exact(a, prec), Interval.exact(b, prec)
    assert a + b in x + y
    assert a - b in x - y
    assert a * b in x * y
    if b != 0:
        assert a / b in x / y
    assert abs(a) in abs(x)


@settings(max_examples=150, deadline=None)
@given(positive, st.sampled_from(PRECISIONS))
def test_log_exp_sound(q, prec):
    with mpmath.workprec(2 * prec + 64):
        ref_q = mpmath.mpf(q.numerator) / q.denominator
        assert encloses(Interval.exact(q, prec).log(), mpmath.log(ref_q), Fraction(1, 2 ** (2 * prec + 40)))
        small = q / 10**4
        ref_s = mpmath.mpf(small.numerator) / small.denominator
        assert encloses(Interval.exact(small, prec).exp(), mpmath.exp(ref_s),
                        Fraction(1, 2 ** (2 * prec + 40)))


@settings(max_examples=300, deadline=None)
@given(st.fractions(max_denominator=10**30), st.integers(1, 30))
def test_decimal_string_outward(q, digits):
    lo = Fraction(decimal_string(q, digits, up=False))
    hi = Fraction(decimal_string(q, digits, up=True))
    assert lo <= q <= hi
    if q:
        assert hi - lo <= abs(q) * Fraction(10) ** (1 - digits) * 2


def test_decimal_examples():
    assert decimal_string(Fraction(208, 105), 5, up=False) == "1.9809e+0"
    assert decimal_string(Fraction(208, 105), 5, up=True) == "1.9810e+0"
    assert decimal_string(Fraction(-1, 3), 3, up=False) == "-3.34e-1"
    assert decimal_string(Fraction(99999, 1), 3, up=True) == "1.00e+5"


def test_as_fraction_helper():
    assert as_fraction(mpmath.mpf(0.5)) == Fraction(1, 2)
