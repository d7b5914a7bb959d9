"""Outward-rounded interval arithmetic and the certified constants built on it.

Endpoints are raw ``mpmath.libmp`` floats. Every endpoint is produced by an
operation rounded toward -inf (lower) or +inf (upper); transcendental results
are additionally widened by one relative ulp so that soundness does not hinge
on the library's last-bit accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath.libmp import (
    fzero,
    from_int,
    from_rational,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_rational,
)

from .errors import DomainError, UsageError

PRECISIONS = (64, 128, 256, 512)
DEFAULT_PRECISION = 128

Exact = Union[int, Fraction]

# 200 digits, truncated; the enclosure below adds a 1e-199 margin
EULER_GAMMA_DIGITS = (
    "0.57721566490153286060651209008240243104215933593992"
    "35988057672348848677267776646709369470632917467495"
    "14631447249807082480960504014486542836224173997644"
    "92353625350033374293733773767394279259525824709491"
)
_GAMMA_MARGIN = Fraction(1, 10**199)


def _to_fraction(x) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _widen(x, prec, rnd):
    """Move ``x`` outward by a relative 2**(1-prec)."""
    if x == fzero:
        return x
    step = mpf_shift(x if x[0] == 0 else mpf_neg(x), 1 - prec)
    if rnd is round_floor:
        return mpf_sub(x, step, prec, round_floor)
    return mpf_add(x, step, prec, round_ceiling)


def _exact_bound(q: Fraction, prec: int, rnd):
    return from_rational(q.numerator, q.denominator, prec, rnd)


@dataclass(frozen=True, eq=False)
class Interval:
    """A closed interval ``[lo, hi]`` known to contain some real number."""

    lo: tuple
    hi: tuple
    prec: int = DEFAULT_PRECISION

    def __post_init__(self):
        if mpf_cmp(self.lo, self.hi) > 0:
            raise ValueError("interval with lo > hi")

    # construction

    @classmethod
    def exact(cls, q: Exact, prec: int = DEFAULT_PRECISION) -> Interval:
        """Tightest ``prec``-bit enclosure of an exact rational."""
        q = Fraction(q)
        return cls(_exact_bound(q, prec, round_floor), _exact_bound(q, prec, round_ceiling), prec)

    @classmethod
    def hull(cls, lo: Exact, hi: Exact, prec: int = DEFAULT_PRECISION) -> Interval:
        return cls(_exact_bound(Fraction(lo), prec, round_floor),
                   _exact_bound(Fraction(hi), prec, round_ceiling), prec)

    @classmethod
    def log_of(cls, q: Exact, prec: int = DEFAULT_PRECISION) -> Interval:
        return cls.exact(q, prec).log()

    @staticmethod
    def coerce(x, prec: int) -> Interval:
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, Fraction)):
            return Interval.exact(x, prec)
        raise TypeError(f"cannot use {type(x).__name__} as an interval")

    # arithmetic

    def __add__(self, other) -> Interval:
        other = Interval.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        return Interval(mpf_add(self.lo, other.lo, prec, round_floor),
                        mpf_add(self.hi, other.hi, prec, round_ceiling), prec)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(mpf_neg(self.hi), mpf_neg(self.lo), self.prec)

    def __abs__(self) -> Interval:
        if mpf_cmp(self.lo, fzero) >= 0:
            return self
        if mpf_cmp(self.hi, fzero) <= 0:
            return -self
        neg_lo = mpf_neg(self.lo)
        return Interval(fzero, self.hi if mpf_cmp(self.hi, neg_lo) >= 0 else neg_lo, self.prec)

    def __sub__(self, other) -> Interval:
        other = Interval.coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        return Interval(mpf_sub(self.lo, other.hi, prec, round_floor),
                        mpf_sub(self.hi, other.lo, prec, round_ceiling), prec)

    def __rsub__(self, other) -> Interval:
        return Interval.coerce(other, self.prec) - self

    def _corners(self, other: Interval, op) -> Interval:
        prec = max(self.prec, other.prec)
        pairs = [(a, b) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        lo = hi = None
        for a, b in pairs:
            down = op(a, b, prec, round_floor)
            up = op(a, b, prec, round_ceiling)
            if lo is None or mpf_cmp(down, lo) < 0:
                lo = down
            if hi is None or mpf_cmp(up, hi) > 0:
                hi = up
        return Interval(lo, hi, prec)

    def __mul__(self, other) -> Interval:
        return self._corners(Interval.coerce(other, self.prec), mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        other = Interval.coerce(other, self.prec)
        if other.contains_zero():
            raise DomainError(f"division by an interval containing 0: {other}")
        return self._corners(other, mpf_div)

    def __rtruediv__(self, other) -> Interval:
        return Interval.coerce(other, self.prec) / self

    def log(self) -> Interval:
        if mpf_cmp(self.lo, fzero) <= 0:
            raise DomainError(f"log of an interval not strictly positive: {self}")
        p = self.prec
        return Interval(_widen(mpf_log(self.lo, p, round_floor), p, round_floor),
                        _widen(mpf_log(self.hi, p, round_ceiling), p, round_ceiling), p)

    def sqrt(self) -> Interval:
        if mpf_cmp(self.lo, fzero) < 0:
            raise DomainError(f"sqrt of an interval reaching below 0: {self}")
        p = self.prec
        return Interval(mpf_sqrt(self.lo, p, round_floor), mpf_sqrt(self.hi, p, round_ceiling), p)

    def exp(self) -> Interval:
        p = self.prec
        return Interval(_widen(mpf_exp(self.lo, p, round_floor), p, round_floor),
                        _widen(mpf_exp(self.hi, p, round_ceiling), p, round_ceiling), p)

    # queries

    @property
    def lo_q(self) -> Fraction:
        return _to_fraction(self.lo)

    @property
    def hi_q(self) -> Fraction:
        return _to_fraction(self.hi)

    def width(self) -> Fraction:
        return self.hi_q - self.lo_q

    def mid(self) -> Fraction:
        return (self.lo_q + self.hi_q) / 2

    def contains_zero(self) -> bool:
        return mpf_cmp(self.lo, fzero) <= 0 <= mpf_cmp(self.hi, fzero)

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return x.subset_of(self)
        q = Fraction(x)
        return self.lo_q <= q <= self.hi_q

    def subset_of(self, other: Interval) -> bool:
        return mpf_cmp(other.lo, self.lo) <= 0 and mpf_cmp(self.hi, other.hi) <= 0

    def overlaps(self, other: Interval) -> bool:
        return mpf_cmp(self.lo, other.hi) <= 0 and mpf_cmp(other.lo, self.hi) <= 0

    def certainly_lt(self, other) -> bool:
        other = Interval.coerce(other, self.prec)
        return mpf_cmp(self.hi, other.lo) < 0

    def certainly_gt(self, other) -> bool:
        other = Interval.coerce(other, self.prec)
        return mpf_cmp(self.lo, other.hi) > 0

    def positive(self) -> bool:
        return mpf_cmp(self.lo, fzero) > 0

    def decimal(self, digits: int = 20) -> tuple[str, str]:
        """Endpoints as decimal strings, rounded outward to ``digits`` significant digits."""
        return (decimal_string(self.lo_q, digits, up=False),
                decimal_string(self.hi_q, digits, up=True))

    def __float__(self) -> float:
        return float(self.mid())

    def __repr__(self) -> str:
        lo, hi = self.decimal(12)
        return f"Interval([{lo}, {hi}], prec={self.prec})"


def decimal_string(q: Fraction, digits: int, up: bool) -> str:
    """``q`` as a scientific-notation string with ``digits`` significant digits.

    Rounding is toward +inf when ``up`` else toward -inf, so a pair of these
    strings never shrinks the interval it describes.
    """
    if digits < 1:
        raise UsageError("digits must be positive")
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    a = abs(q)
    e = int((a.numerator.bit_length() - a.denominator.bit_length()) * 0.30103)
    while a >= Fraction(10) ** e:
        e += 1
    while a < Fraction(10) ** (e - 1):
        e -= 1
    # now 10**(e-1) <= a < 10**e
    scale = Fraction(10) ** (digits - e)
    scaled = a * scale
    # outward for the signed value: magnitude rounds up iff (q > 0) == up
    if (q > 0) == up:
        m = -((-scaled.numerator) // scaled.denominator)
    else:
        m = scaled.numerator // scaled.denominator
    if m == 10**digits:
        m //= 10
        e += 1
    if m == 0:
        return "0"
    s = str(m).rjust(digits, "0")
    return f"{sign}{s[0]}.{s[1:]}e{e - 1:+d}" if digits > 1 else f"{sign}{s}e{e - 1:+d}"


@dataclass(frozen=True)
class CertifiedConstant:
    name: str
    enclosure: Interval
    derivation: str


def _check_precision(precision: int) -> None:
    if precision < 64:
        raise UsageError(f"precision must be >= 64 bits, got {precision}")


@lru_cache(maxsize=None)
def euler_gamma(precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of the Euler-Mascheroni constant from the stored 200-digit literal."""
    _check_precision(precision)
    if precision > 600:
        raise UsageError("the stored gamma literal only supports precision <= 600 bits")
    g = Fraction(EULER_GAMMA_DIGITS)
    return Interval.hull(g, g + _GAMMA_MARGIN, precision)


@lru_cache(maxsize=None)
def exp_gamma_half(precision: int = DEFAULT_PRECISION) -> Interval:
    """e^gamma / 2, the odd-n coefficient of log log n."""
    return euler_gamma(precision).exp() / 2


def log_of_factorization(f, precision: int = DEFAULT_PRECISION) -> Interval:
    """log n as sum(a * log p); ``n`` itself is never formed."""
    total = Interval.exact(0, precision)
    for p, a in f.pairs:
        total = total + Interval.log_of(p, precision) * a
    return total


def loglog_of_integer(n, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of log log n for an int or a Factorization, n >= 3."""
    if isinstance(n, int):
        if n < 3:
            raise DomainError(f"log log n needs n >= 3, got {n}")
        return _loglog_int(n, precision)
    if not n.pairs or n.pairs == ((2, 1),):
        raise DomainError(f"log log n needs n >= 3, got {n}")
    return loglog_from_logsum(log_of_factorization(n, precision))


@lru_cache(maxsize=1 << 17)
def _loglog_int(n: int, precision: int) -> Interval:
    return Interval.log_of(n, precision).log()


def loglog_from_logsum(log_n: Interval) -> Interval:
    """log of an enclosure of log N; requires the enclosure to sit above 1."""
    if not log_n.certainly_gt(1):
        raise DomainError(f"log N enclosure must lie strictly above 1, got {log_n}")
    return log_n.log()


def rhs_bound(t: Interval, A, B) -> Interval:
    """Enclosure of A*t + B/t."""
    if not t.positive():
        raise DomainError(f"t must be strictly positive, got {t}")
    return A * t + B / t


@lru_cache(maxsize=None)
def main_constant_C(precision: int = DEFAULT_PRECISION) -> CertifiedConstant:
    """(sigma(315)/315 - (e^gamma/2) log log 315) * log log 315."""
    from .arith import Factorization, sigma_over_n

    _check_precision(precision)
    s = sigma_over_n(Factorization(((3, 2), (5, 1), (7, 1))))
    t = loglog_of_integer(315, precision)
    value = (s - exp_gamma_half(precision) * t) * t
    return CertifiedConstant("C", value,
                             "(sigma(315)/315 - (e^gamma/2) log log 315) * log log 315, sigma(315)/315 = 208/105")


def lemma24_inner_factor(precision: int = DEFAULT_PRECISION, x: int | None = 20000) -> Interval:
    """1 / (1 - (1 + log 2) / (8 log x)); equals 1 when ``x`` is None (x -> infinity)."""
    _check_precision(precision)
    if x is None:
        return Interval.exact(1, precision)
    ratio = (Interval.log_of(2, precision) + 1) / (Interval.log_of(x, precision) * 8)
    return 1 / (1 - ratio)


def lemma24_constant(precision: int = DEFAULT_PRECISION, x: int | None = 20000) -> CertifiedConstant:
    """0.125 (1 + log 2) / (1 - (1 + log 2)/(8 log x)), about 0.21626511 at x = 20000."""
    value = (Interval.log_of(2, precision) + 1) * Fraction(1, 8) * lemma24_inner_factor(precision, x)
    where = "x -> infinity" if x is None else f"x = {x}"
    return CertifiedConstant("lemma24", value, f"0.125 (1 + log 2) / (1 - (1 + log 2)/(8 log x)), {where}")


def robin_constant(precision: int = DEFAULT_PRECISION) -> CertifiedConstant:
    """The even-n analogue: (sigma(12)/12 - e^gamma log log 12) * log log 12 = 0.6482..."""
    _check_precision(precision)
    t = loglog_of_integer(12, precision)
    value = (Fraction(7, 3) - euler_gamma(precision).exp() * t) * t
    return CertifiedConstant("robin_12", value, "(sigma(12)/12 - e^gamma log log 12) * log log 12")


# independent cross-check for the stored gamma digits

def _log2_fixed(one: int) -> int:
    # log 2 = 2 atanh(1/3) = 2 sum 1/((2j+1) 3^(2j+1))
    total = 0
    power = one // 3
    j = 0
    while power:
        total += power // (2 * j + 1)
        power //= 9
        j += 1
    return 2 * total


def euler_gamma_series(digits: int) -> Fraction:
    """gamma to about ``digits`` decimals by the Brent-McMillan sum, integers only.

    Uses gamma = U/V - log n with n a power of two, truncation error O(e^(-4n)).
    """
    bits = int(digits * 3.33) + 64
    one = 1 << bits
    m = 1
    while 4 * (1 << m) < digits * 2.303 + 20:
        m += 1
    n = 1 << m
    n2 = n * n
    a = -m * _log2_fixed(one)
    b = one
    u, v = a, b
    k = 1
    while b or abs(a) > 1:
        b = b * n2 // (k * k)
        a = (a * n2 // k + b) // k
        u += a
        v += b
        k += 1
    return Fraction(u * one // v, one)
