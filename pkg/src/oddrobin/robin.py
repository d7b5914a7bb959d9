"""Checkers for the odd-n bound and for the numeric steps behind its large-n case.

Every claim is decided as a certified strict inequality. The single exception
is n = 315, where the bound is an identity because C is defined from it.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Factorization, factorize, n_over_phi, sigma_over_n
from .errors import DomainError, UsageError
from .primes import PrimeTable, default_table, log_theta_prefix, log_theta_sum, odd_primorial
from .realbounds import (
    DEFAULT_PRECISION,
    Interval,
    exp_gamma_half,
    lemma24_constant,
    loglog_from_logsum,
    loglog_of_integer,
    main_constant_C,
    rhs_bound,
)
from .verdict import Outcome, Report, Verdict, certify_lt

EQUALITY_CASE = Factorization(((3, 2), (5, 1), (7, 1)))
PRIMORIAL_THRESHOLD_K = 54
LEMMA22_MIN_X = 10_000
LEMMA24_MIN_P = 20_000


def constant_C(precision: int, C: Fraction | None = None) -> Interval:
    """The certified C, or an exact substitute (negative testing only)."""
    if C is None:
        return main_constant_C(precision).enclosure
    return Interval.exact(C, precision)


def _as_factorization(n, table: PrimeTable | None) -> Factorization:
    if isinstance(n, Factorization):
        return n
    if n < 2:
        raise DomainError(f"the bound needs n >= 3, got {n}")
    return factorize(n, table or default_table())


def check_main_inequality(n, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                          C: Fraction | None = None, table: PrimeTable | None = None) -> Verdict:
    """sigma(n)/n <= (e^gamma/2) log log n + C / log log n for odd n >= 3."""
    f = _as_factorization(n, table)
    if not f.is_odd():
        raise UsageError(f"n must be odd, got {f}")
    value = f.value() if len(f.pairs) < 40 else None
    if value is not None and value < 3:
        raise DomainError(f"the bound needs n >= 3, got {value}")
    arg = value if value is not None and value.bit_length() <= 128 else f
    lhs = sigma_over_n(f)
    subject = f"sigma(n)/n < rhs(n), n = {value if value is not None and value < 10**30 else f.ascii()}"

    def rhs(prec: int) -> Interval:
        return rhs_bound(loglog_of_integer(arg, prec), exp_gamma_half(prec), constant_C(prec, C))

    if C is None and f == EQUALITY_CASE:
        r = rhs(precision)
        if lhs in r:
            return Verdict(subject, Outcome.HOLDS_WITH_EQUALITY, lhs, r, precision,
                           "equality by construction of C")
        return Verdict(subject, Outcome.FAILS, lhs, r, precision,
                       "rhs enclosure misses sigma(315)/315")
    return certify_lt(subject, lambda prec: lhs, rhs, precision, ladder)


def _primorial_rhs(log_sum: Interval, prec: int, C: Fraction | None) -> Interval:
    return rhs_bound(loglog_from_logsum(log_sum), exp_gamma_half(prec), constant_C(prec, C))


def check_primorial(k: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                    C: Fraction | None = None, table: PrimeTable | None = None) -> Verdict:
    """N'_k/phi(N'_k) < (e^gamma/2) log log N'_k + C / log log N'_k.

    The left side is exact; log log N'_k comes from the prime log sum.
    """
    table = table or default_table()
    spec = odd_primorial(k, table)
    lhs = n_over_phi(spec.factorization)
    return certify_lt(
        f"N'_k/phi(N'_k) < rhs(N'_k), k = {k}, p_k = {table.prime(k)}",
        lambda prec: lhs,
        lambda prec: _primorial_rhs(log_theta_sum(k, table, prec), prec, C),
        precision, ladder,
    )


def primorial_sweep(k_min: int, k_max: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                    C: Fraction | None = None, table: PrimeTable | None = None) -> Report:
    """check_primorial for every k in [k_min, k_max], sharing the running product and log sum."""
    if not 2 <= k_min <= k_max:
        raise UsageError(f"need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")
    table = table or default_table()
    table.prime(k_max)
    sums = log_theta_prefix(k_max, table, precision)
    ratio = n_over_phi(odd_primorial(k_min, table).factorization)
    verdicts = []
    for k in range(k_min, k_max + 1):
        if k > k_min:
            p = table.primes[k - 1]
            ratio *= Fraction(p, p - 1)
        v = certify_lt(
            f"N'_k/phi(N'_k) < rhs(N'_k), k = {k}, p_k = {table.prime(k)}",
            lambda prec, r=ratio: r,
            lambda prec, s=sums[k]: _primorial_rhs(s, prec, C),
            precision, ladder=False,
        )
        if v.outcome is Outcome.UNDECIDED and ladder:
            v = check_primorial(k, precision, ladder, C, table)
        verdicts.append(v)

    threshold = None
    for k, v in zip(range(k_max, k_min - 1, -1), reversed(verdicts)):
        if not v.ok:
            break
        threshold = k
    from_k = max(PRIMORIAL_THRESHOLD_K, k_min)
    tail = verdicts[from_k - k_min:]
    summary = {
        "k_min": k_min,
        "k_max": k_max,
        "p_k_max": table.prime(k_max),
        "rows": len(verdicts),
        "holds_count": sum(v.ok for v in verdicts),
        "all_hold_from_k54": all(v.ok for v in tail) if tail else None,
        "smallest_k_all_larger_hold": threshold,
    }
    return Report("primorial-sweep", verdicts, summary)


def _lemma24_claim(k: int, table: PrimeTable, precision: int, ladder: bool) -> Verdict:
    p = table.prime(k)

    def lower(prec: int) -> Interval:
        log_p = Interval.log_of(p, prec)
        return log_p - lemma24_constant(prec).enclosure / log_p

    return certify_lt(
        f"log p_k - 0.216265.../log p_k < log log N'_k, p_k = {p}",
        lower,
        lambda prec: loglog_from_logsum(log_theta_sum(k, table, prec)),
        precision, ladder,
    )


def check_lemma24(p_k: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                  table: PrimeTable | None = None) -> Verdict:
    """log log N'_k > log p_k - 0.216265.../log p_k at a sieve prime p_k >= 20000."""
    if p_k < LEMMA24_MIN_P:
        raise UsageError(f"Lemma needs p_k >= {LEMMA24_MIN_P}, got {p_k}")
    table = table or default_table()
    return _lemma24_claim(table.index_of(p_k), table, precision, ladder)


def _lemma22_rhs(p: int, prec: int) -> Interval:
    log_p = Interval.log_of(p, prec)
    return exp_gamma_half(prec) * log_p * (1 + Fraction(1, 5) / (log_p * log_p))


def check_lemma22(k: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                  table: PrimeTable | None = None) -> Verdict:
    """prod_{i=2..k} p_i/(p_i - 1) < (e^gamma/2) log x (1 + 0.2/log^2 x) at x = p_k >= 10^4."""
    table = table or default_table()
    p = table.prime(k)
    if p < LEMMA22_MIN_X:
        raise UsageError(f"Lemma needs x = p_k >= {LEMMA22_MIN_X}, got {p}")
    lhs = n_over_phi(odd_primorial(k, table).factorization)
    return certify_lt(
        f"prod p/(p-1) < (e^gamma/2) log x (1 + 0.2/log^2 x), x = p_k = {p}",
        lambda prec: lhs,
        lambda prec: _lemma22_rhs(p, prec),
        precision, ladder,
    )


def check_theorem31_chain(k: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                          C: Fraction | None = None, table: PrimeTable | None = None) -> Report:
    """The four numeric links of the large-n argument at a single k with p_k >= 20000.

    (a) the log log lower bound, (b) the combined coefficient step
    A(log p - c/log p) + C/log p > A log p (1 + 0.2/log^2 p), (c) the Mertens-type
    product bound at x = p_k, (d) the direct primorial comparison.
    """
    table = table or default_table()
    p = table.prime(k)
    if p < LEMMA24_MIN_P:
        raise UsageError(f"chain needs p_k >= {LEMMA24_MIN_P}, got {p}")

    def combined_upper(prec: int) -> Interval:
        log_p = Interval.log_of(p, prec)
        A = exp_gamma_half(prec)
        c = lemma24_constant(prec).enclosure
        return A * (log_p - c / log_p) + constant_C(prec, C) / log_p

    link_a = _lemma24_claim(k, table, precision, ladder)
    link_b = certify_lt(
        f"A log p (1 + 0.2/log^2 p) < A (log p - c/log p) + C/log p, p = {p}",
        lambda prec: _lemma22_rhs(p, prec),
        combined_upper,
        precision, ladder,
    )
    link_c = check_lemma22(k, precision, ladder, table)
    link_d = check_primorial(k, precision, ladder, C, table)

    A = exp_gamma_half(precision)
    c = lemma24_constant(precision).enclosure
    slack_coeff = constant_C(precision, C) - A * c
    needed_coeff = A * Fraction(1, 5)
    summary = {
        "k": k,
        "p_k": p,
        "coefficient_C_minus_A_c": slack_coeff,
        "coefficient_A_times_0_2": needed_coeff,
        "monotone_from_t": (constant_C(precision, C) / A).sqrt(),
    }
    return Report("large-n-chain", [link_a, link_b, link_c, link_d], summary)
