"""Odd colossally abundant numbers and the range-splitting verification built on them.

An odd CA number is grown one prime at a time: raising the exponent of ``p``
from ``a - 1`` to ``a`` pays off for every epsilon below

    eps(p, a) = log((p^(a+1) - 1) / (p^a - 1)) / log p - 1,

so the sequence is obtained by always taking the step with the largest eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import Factorization, sigma_over_n
from .errors import PrecisionExhausted, StructuralError, UsageError
from .primes import BRIDGE_PRIME, PrimeTable, default_table, odd_primorial
from .realbounds import DEFAULT_PRECISION, Interval, decimal_string, exp_gamma_half, loglog_of_integer
from .robin import PRIMORIAL_THRESHOLD_K, constant_C
from .verdict import Outcome, Report, Verdict, certify_lt, combine, precision_ladder


@dataclass(frozen=True)
class CriticalEpsilon:
    p: int
    a: int
    eps: Interval


@lru_cache(maxsize=4096)
def critical_epsilon(p: int, a: int, precision: int = DEFAULT_PRECISION) -> CriticalEpsilon:
    if p == 2:
        raise UsageError("only odd colossally abundant numbers are generated; p = 2 rejected")
    if p < 3 or a < 1 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise UsageError(f"need an odd prime p and a >= 1, got p={p}, a={a}")
    gain = Fraction(p ** (a + 1) - 1, p**a - 1)
    eps = Interval.log_of(gain, precision) / Interval.log_of(p, precision) - 1
    return CriticalEpsilon(p, a, eps)


@dataclass(frozen=True)
class OddCaNumber:
    factorization: Factorization
    ordinal: int
    eps_enter: Interval
    eps_exit: Interval

    @property
    def eps_window(self) -> Interval:
        """Hull of the epsilon range on which this number is the maximizer."""
        return Interval(self.eps_exit.lo, self.eps_enter.hi, self.eps_enter.prec)

    @property
    def value(self) -> int:
        return self.factorization.value()

    def __str__(self) -> str:
        return str(self.factorization)


def _larger(x: tuple[int, int], y: tuple[int, int], precision: int, ladder: bool) -> tuple[int, int]:
    """The candidate step with the larger critical epsilon."""
    for prec in precision_ladder(precision, ladder):
        ex = critical_epsilon(*x, prec).eps
        ey = critical_epsilon(*y, prec).eps
        if ex.certainly_gt(ey):
            return x
        if ey.certainly_gt(ex):
            return y
    raise PrecisionExhausted(f"cannot order eps{x} and eps{y} at {prec} bits")


def generate_odd_ca(count: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                    table: PrimeTable | None = None) -> list[OddCaNumber]:
    """The first ``count`` odd colossally abundant numbers, in increasing order."""
    if count < 1:
        raise UsageError(f"count must be >= 1, got {count}")
    table = table or default_table()
    return list(_sequence(precision, ladder, table, count))


def _steps(precision, ladder, table):
    exponents: dict[int, int] = {}
    next_new = 1  # index into table.primes of the smallest unused odd prime
    while True:
        fresh = (table.primes[next_new], 1)
        best = fresh
        for p, a in exponents.items():
            best = _larger(best, (p, a + 1), precision, ladder)
        p, a = best
        exponents[p] = a
        if best == fresh:
            next_new += 1
        yield p, a


def _sequence(precision, ladder, table, count):
    f = Factorization()
    steps = _steps(precision, ladder, table)
    step = next(steps)
    for ordinal in range(1, count + 1):
        f = f.times_prime(step[0])
        nxt = next(steps)
        yield OddCaNumber(f, ordinal,
                          critical_epsilon(*step, precision).eps,
                          critical_epsilon(*nxt, precision).eps)
        step = nxt


@lru_cache(maxsize=8)
def odd_ca_up_to_prime(max_prime: int = 251, precision: int = DEFAULT_PRECISION) -> tuple[OddCaNumber, ...]:
    """Every odd CA number whose largest prime is <= ``max_prime``, plus the next one."""
    out = []
    for n in _sequence(precision, True, default_table(), 10**6):
        out.append(n)
        if n.factorization.primes[-1] > max_prime:
            break
    return tuple(out)


def _consecutive(N: OddCaNumber, N_next: OddCaNumber) -> bool:
    if N_next.ordinal != N.ordinal + 1:
        return False
    q = Fraction(N_next.value, N.value)
    return (q.denominator == 1 and q.numerator in N_next.factorization.primes
            and N.factorization.times_prime(q.numerator) == N_next.factorization)


def verify_split(N: OddCaNumber, N_next: OddCaNumber, alpha: Fraction, beta: Fraction,
                 A: Interval | None = None, B: Interval | None = None,
                 precision: int = DEFAULT_PRECISION, ladder: bool = True,
                 C: Fraction | None = None) -> Report:
    """Certify the split bound on the closed range [N, N_next].

    Part (1): alpha sigma(M)/M < A log log M at M = N and M = N_next.
    Part (2): beta sigma(N_next)/N_next < B / log log N_next.
    Together with alpha + beta <= 1 these give sigma(n)/n <= A log log n + B/log log n
    on the whole range. A and B default to e^gamma/2 and C.
    """
    if not _consecutive(N, N_next):
        raise UsageError(f"{N} and {N_next} are not consecutive odd CA numbers")
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= 0 or beta < 0 or alpha + beta > 1:
        raise UsageError(f"need alpha > 0, beta >= 0, alpha + beta <= 1; got {alpha}, {beta}")

    def coeff_A(prec):
        return A if A is not None else exp_gamma_half(prec)

    def coeff_B(prec):
        return B if B is not None else constant_C(prec, C)

    def part1(M: OddCaNumber) -> Verdict:
        s = alpha * sigma_over_n(M.factorization)
        return certify_lt(
            f"alpha sigma(N)/N < A log log N, N = {M}",
            lambda prec: s,
            lambda prec: coeff_A(prec) * loglog_of_integer(M.factorization, prec),
            precision, ladder,
        )

    s_next = beta * sigma_over_n(N_next.factorization)
    part2 = certify_lt(
        f"beta sigma(N')/N' < B / log log N', N' = {N_next}",
        lambda prec: s_next,
        lambda prec: coeff_B(prec) / loglog_of_integer(N_next.factorization, prec),
        precision, ladder,
    )
    verdicts = [part1(N), part1(N_next), part2]
    summary = {
        "range": [str(N), str(N_next)],
        "alpha": alpha,
        "beta": beta,
        "conclusion": combine(v.outcome for v in verdicts),
    }
    return Report("split", verdicts, summary)


# Corollary cases: (alpha, beta, lower endpoint, upper endpoint)
def _fac(*exponents: int, upto: int) -> Factorization:
    """3^e1 * 5^e2 * ... with every remaining odd prime <= ``upto`` to the first power."""
    odd = [p for p in default_table(1000).primes[1:] if p <= upto]
    exps = list(exponents) + [1] * (len(odd) - len(exponents))
    return Factorization.from_exponents(odd, exps)


COROLLARY_CASES = {
    1: (Fraction(39, 40), Fraction(1, 40), _fac(3, 2, upto=31),
        _fac(6, 4, 3, 2, 2, 2, 2, 1, upto=251)),
    2: (Fraction(19, 20), Fraction(1, 20), _fac(3, 2, upto=17), _fac(4, 3, 2, upto=59)),
    3: (Fraction(19, 21), Fraction(2, 21), _fac(2, upto=13), _fac(3, 2, upto=17)),
}

ODD_CA_TO_67 = _fac(4, 3, 2, upto=67)
BRUTE_FORCE_TOP = 45045


def _index_of(seq, f: Factorization, label: str) -> int:
    for i, n in enumerate(seq):
        if n.factorization == f:
            return i
    raise StructuralError(f"{label} endpoint {f} is not in the generated odd CA sequence")


def corollary_sweep(case_id: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                    C: Fraction | None = None) -> Report:
    """verify_split over every consecutive CA pair [N_i, N_i+1] inside the case's range."""
    if case_id not in COROLLARY_CASES:
        raise UsageError(f"case must be 1, 2 or 3, got {case_id}")
    alpha, beta, lo, hi = COROLLARY_CASES[case_id]
    seq = odd_ca_up_to_prime(251, precision)
    i = _index_of(seq, lo, f"case {case_id} lower")
    j = _index_of(seq, hi, f"case {case_id} upper")
    verdicts = []
    for N, N_next in zip(seq[i:j], seq[i + 1:j + 1]):
        verdicts.extend(verify_split(N, N_next, alpha, beta, precision=precision,
                                     ladder=ladder, C=C).verdicts)
    summary = {
        "case": case_id,
        "alpha": alpha,
        "beta": beta,
        "lower": str(lo),
        "upper": str(hi),
        "lower_value": lo.value(),
        "upper_value": hi.value(),
        "pairs": j - i,
    }
    return Report(f"corollary-case-{case_id}", verdicts, summary)


@dataclass(frozen=True)
class Segment:
    """A closed range of odd n covered by one stage; ``hi`` None means unbounded."""

    key: str
    label: str
    lo: int
    hi: int | None


def default_segments(brute_force_hi: int = BRUTE_FORCE_TOP, cases=(1, 2, 3),
                     sweep: tuple[int, int] | None = None, table: PrimeTable | None = None) -> list[Segment]:
    """Ranges of the standard pipeline: brute force, corollary cases, primorials, large-n tail."""
    table = table or default_table()
    bridge_k = table.index_of(BRIDGE_PRIME)
    k_min, k_max = sweep or (PRIMORIAL_THRESHOLD_K, bridge_k)
    segments = [Segment("scan", "brute-force scan", 3, brute_force_hi)]
    for c in sorted(cases):
        _, _, lo, hi = COROLLARY_CASES[c]
        segments.append(Segment(f"case-{c}", f"corollary case {c}", lo.value(), hi.value()))
    segments.append(Segment("primorial", f"primorial sweep k={k_min}..{k_max}", odd_primorial(k_min, table).value,
                            odd_primorial(k_max + 1, table).value - 1))
    if table.prime(k_max) >= BRIDGE_PRIME:
        segments.append(Segment("large-n", f"large-n theorem from p_k={table.prime(k_max)}",
                                odd_primorial(k_max, table).value, None))
    return segments


def coverage_audit(segments: list[Segment] | None = None) -> Verdict:
    """Certify that the union of ``segments`` contains every odd n >= 3.

    Endpoints are exact integers; a gap is reported as its first and last odd member.
    """
    segments = default_segments() if segments is None else segments
    reach = 1  # every odd n <= reach is covered
    gaps = []
    for seg in sorted(segments, key=lambda s: s.lo):
        first_odd = seg.lo if seg.lo % 2 else seg.lo + 1
        if first_odd > reach + 2:
            gaps.append((reach + 2, first_odd - 2))
        if seg.hi is None:
            reach = None
            break
        reach = max(reach, seg.hi if seg.hi % 2 else seg.hi - 1)
    if reach is not None:
        gaps.append((reach + 2, None))
    if gaps:
        note = "; ".join(f"uncovered odd n in [{_short(a)}, {'inf' if b is None else _short(b)}]"
                         for a, b in gaps)
        return Verdict("coverage of all odd n >= 3", Outcome.FAILS, note=note)
    return Verdict("coverage of all odd n >= 3", Outcome.HOLDS,
                   note=" | ".join(s.label for s in sorted(segments, key=lambda s: s.lo)))


def _short(n: int) -> str:
    if n.bit_length() <= 130:
        return str(n)
    return "~" + decimal_string(Fraction(n), 12, up=False)
