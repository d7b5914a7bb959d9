"""Exhaustive certified check of the bound over a bounded range of odd n."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize
from .errors import UsageError
from .primes import PrimeTable, default_table
from .realbounds import DEFAULT_PRECISION, Interval
from .robin import check_main_inequality
from .verdict import Outcome, Report, Verdict


@dataclass
class ScanReport:
    lo: int
    hi: int
    checked: int = 0
    violations: list[Verdict] = field(default_factory=list)
    undecided: list[Verdict] = field(default_factory=list)
    equality_cases: list[int] = field(default_factory=list)
    min_slack: tuple[int, Interval] | None = None
    precision: int = DEFAULT_PRECISION
    wall_time: float = 0.0

    @property
    def outcome(self) -> Outcome:
        if self.violations:
            return Outcome.FAILS
        if self.undecided:
            return Outcome.UNDECIDED
        return Outcome.HOLDS

    def merge(self, other: ScanReport) -> ScanReport:
        """Combine reports over disjoint ranges; order of the operands does not matter."""
        first, second = sorted((self, other), key=lambda r: r.lo)
        slack = [s for s in (first.min_slack, second.min_slack) if s is not None]
        return ScanReport(
            lo=first.lo,
            hi=max(first.hi, second.hi),
            checked=first.checked + second.checked,
            violations=first.violations + second.violations,
            undecided=first.undecided + second.undecided,
            equality_cases=sorted(first.equality_cases + second.equality_cases),
            min_slack=min(slack, key=_slack_key) if slack else None,
            precision=max(first.precision, second.precision),
            wall_time=first.wall_time + second.wall_time,
        )

    def to_report(self, name: str = "scan") -> Report:
        verdicts = []
        for n in self.equality_cases:
            verdicts.append(Verdict(f"sigma(n)/n <= rhs(n), n = {n}", Outcome.HOLDS_WITH_EQUALITY,
                                    precision_used=self.precision, note="equality by construction of C"))
        verdicts.extend(self.violations)
        verdicts.extend(self.undecided)
        if self.min_slack is not None:
            n, slack = self.min_slack
            outcome = Outcome.HOLDS if slack.positive() else Outcome.FAILS
            verdicts.append(Verdict(f"0 < min slack rhs(n) - sigma(n)/n, attained at n = {n}",
                                    outcome, Fraction(0), slack, slack.prec))
        summary = {
            "range": [self.lo, self.hi],
            "checked": self.checked,
            "violations": len(self.violations),
            "undecided": len(self.undecided),
            "equality_cases": list(self.equality_cases),
            "min_slack_n": self.min_slack[0] if self.min_slack else None,
        }
        return Report(name, verdicts, summary)


def _slack_key(item: tuple[int, Interval]):
    n, slack = item
    return (slack.mid(), n)


def _odd_count(lo: int, hi: int) -> int:
    lo = max(lo, 3)
    if lo > hi:
        return 0
    first = lo if lo % 2 else lo + 1
    last = hi if hi % 2 else hi - 1
    return 0 if first > last else (last - first) // 2 + 1


def _scan_serial(lo: int, hi: int, precision: int, ladder: bool, C: Fraction | None,
                 table: PrimeTable) -> ScanReport:
    start = time.perf_counter()
    report = ScanReport(lo, hi, precision=precision)
    best = None
    first = max(lo, 3)
    first += 1 - first % 2
    for n in range(first, hi + 1, 2):
        v = check_main_inequality(factorize(n, table), precision, ladder, C)
        report.checked += 1
        if v.outcome is Outcome.HOLDS_WITH_EQUALITY:
            report.equality_cases.append(n)
            continue
        if v.outcome is Outcome.FAILS:
            report.violations.append(v)
        elif v.outcome is Outcome.UNDECIDED:
            report.undecided.append(v)
        slack = (n, v.rhs - v.lhs)
        if best is None or _slack_key(slack) < _slack_key(best):
            best = slack
    report.min_slack = best
    report.wall_time = time.perf_counter() - start
    return report


def _scan_chunk(args):
    lo, hi, precision, ladder, C, limit = args
    return _scan_serial(lo, hi, precision, ladder, C, default_table(limit))


def brute_force_scan(lo: int, hi: int, precision: int = DEFAULT_PRECISION, ladder: bool = True,
                     C: Fraction | None = None, table: PrimeTable | None = None,
                     workers: int = 1) -> ScanReport:
    """Certified verdict for every odd n in [lo, hi]; ``workers > 1`` splits the range across processes."""
    table = table or default_table()
    if not 3 <= lo <= hi:
        raise UsageError(f"need 3 <= lo <= hi, got [{lo}, {hi}]")
    if hi > table.limit:
        raise UsageError(f"hi = {hi} exceeds the sieve limit {table.limit}")
    if workers <= 1:
        return _scan_serial(lo, hi, precision, ladder, C, table)
    step = -(-(hi - lo + 1) // (4 * workers))
    chunks = [(a, min(a + step - 1, hi), precision, ladder, C, table.limit)
              for a in range(lo, hi + 1, step)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_scan_chunk, chunks))
    merged = parts[0]
    for part in parts[1:]:
        merged = merged.merge(part)
    return merged


def min_slack(report: ScanReport) -> tuple[int, Interval]:
    """The odd n with the smallest rhs - lhs, excluding equality cases."""
    if report.min_slack is None:
        raise UsageError(f"no non-equality n in [{report.lo}, {report.hi}]")
    return report.min_slack
