"""Stage orchestration for the command-line runs."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction

from .ca import (
    BRUTE_FORCE_TOP,
    Segment,
    corollary_sweep,
    coverage_audit,
    default_segments,
    generate_odd_ca,
)
from .errors import UsageError
from .primes import BRIDGE_PRIME, default_table
from .realbounds import (
    EULER_GAMMA_DIGITS,
    PRECISIONS,
    euler_gamma,
    euler_gamma_series,
    exp_gamma_half,
    lemma24_constant,
    loglog_of_integer,
    main_constant_C,
    robin_constant,
)
from .report import PipelineReport
from .robin import (
    PRIMORIAL_THRESHOLD_K,
    check_lemma22,
    check_lemma24,
    check_theorem31_chain,
    constant_C,
    primorial_sweep,
)
from .scan import brute_force_scan
from .verdict import Outcome, Report, Verdict, certify_lt

log = logging.getLogger(__name__)

ROBIN_TRUNCATED = Fraction(6482, 10000)
LEMMA_NAMES = ("2.2", "2.4", "thm3.1")


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify-all"
    precision: int = 128
    ladder: bool = True
    scan_from: int = 3
    scan_to: int = BRUTE_FORCE_TOP
    sweep_from: int = PRIMORIAL_THRESHOLD_K
    sweep_to: int | None = None
    count: int = 30
    lemma: str = "thm3.1"
    format: str = "text"
    out: str | None = None
    parallel: bool = False
    unsound_C: Fraction | None = None

    def __post_init__(self):
        if self.precision not in PRECISIONS:
            raise UsageError(f"precision must be one of {PRECISIONS}, got {self.precision}")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.lemma not in LEMMA_NAMES:
            raise UsageError(f"lemma must be one of {LEMMA_NAMES}, got {self.lemma!r}")
        if not 3 <= self.scan_from <= self.scan_to:
            raise UsageError(f"need 3 <= --from <= --to, got [{self.scan_from}, {self.scan_to}]")
        if self.count < 1:
            raise UsageError("--count must be >= 1")

    @property
    def bridge_k(self) -> int:
        return default_table().index_of(BRIDGE_PRIME)

    @property
    def sweep_end(self) -> int:
        return self.bridge_k if self.sweep_to is None else self.sweep_to

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d["unsound_C"] = None if self.unsound_C is None else str(self.unsound_C)
        return d


def constants_report(precision: int = 128, C: Fraction | None = None) -> Report:
    """Certified constants plus the cross-checks that do not depend on a scan."""
    c = constant_C(precision, C)
    A = exp_gamma_half(precision)
    t12 = loglog_of_integer(12, precision)
    robin_rhs = euler_gamma(precision).exp() * t12 + ROBIN_TRUNCATED / t12
    series = euler_gamma_series(195)
    verdicts = [
        certify_lt("|sigma(12)/12 - (e^gamma log log 12 + 0.6482/log log 12)| < 1e-3",
                   lambda prec: abs(robin_rhs - Fraction(7, 3)),
                   lambda prec: Fraction(1, 1000), precision, ladder=False),
        certify_lt("0.6482 < C (odd constant exceeds the even-case one)",
                   lambda prec: ROBIN_TRUNCATED, lambda prec: constant_C(prec, C), precision),
        certify_lt("C/(e^gamma/2) < 1, so A t + C/t increases for t >= 1",
                   lambda prec: constant_C(prec, C) / exp_gamma_half(prec),
                   lambda prec: Fraction(1), precision),
        certify_lt("|stored gamma digits - Brent-McMillan series| < 1e-190",
                   lambda prec: abs(Fraction(EULER_GAMMA_DIGITS) - series),
                   lambda prec: Fraction(1, 10**190), precision),
    ]
    summary = {
        "gamma": euler_gamma(precision),
        "e^gamma/2": A,
        "C": c,
        "C_derivation": "unsound substitute" if C is not None else main_constant_C(precision).derivation,
        "lemma24_constant": lemma24_constant(precision).enclosure,
        "robin_constant_n12": robin_constant(precision).enclosure,
        "sigma(12)/12": Fraction(7, 3),
        "robin_rhs_at_12_with_0.6482": robin_rhs,
    }
    return Report("constants", verdicts, summary)


def ca_list_report(count: int, precision: int = 128, ladder: bool = True) -> Report:
    numbers = generate_odd_ca(count, precision, ladder)
    verdicts = [
        Verdict(f"eps window nonempty for N_{n.ordinal} = {n}",
                Outcome.HOLDS if n.eps_exit.certainly_lt(n.eps_enter) else Outcome.UNDECIDED,
                n.eps_exit, n.eps_enter, precision)
        for n in numbers
    ]
    summary = {
        "count": count,
        "numbers": [{"ordinal": n.ordinal, "factorization": str(n), "value": n.value} for n in numbers],
    }
    return Report("ca-list", verdicts, summary)


def lemma_report(name: str, precision: int = 128, ladder: bool = True,
                 C: Fraction | None = None) -> Report:
    table = default_table()
    bridge_k = table.index_of(BRIDGE_PRIME)
    if name == "2.2":
        ks = [table.index_of(10007), bridge_k]
        return Report("lemma-2.2", [check_lemma22(k, precision, ladder, table) for k in ks])
    if name == "2.4":
        return Report("lemma-2.4", [check_lemma24(BRIDGE_PRIME, precision, ladder, table)])
    if name == "thm3.1":
        return check_theorem31_chain(bridge_k, precision, ladder, C, table)
    raise UsageError(f"unknown lemma {name!r}")


def verify_all(config: RunConfig) -> PipelineReport:
    """Every stage of the odd-n bound, then the coverage audit over the stages that held."""
    prec, ladder, C = config.precision, config.ladder, config.unsound_C
    bridge_k = config.bridge_k
    report = PipelineReport(config.echo())
    segments: list[Segment] = []
    standard = {s.key: s for s in default_segments(sweep=(PRIMORIAL_THRESHOLD_K, bridge_k))}

    def stage(r: Report, key: str | None = None) -> Report:
        log.info("%s: %s", r.name, r.outcome.value)
        report.stages.append(r)
        if r.ok and key in standard:
            segments.append(standard[key])
        return r

    stage(constants_report(prec, C))
    workers = 4 if config.parallel else 1
    stage(brute_force_scan(3, BRUTE_FORCE_TOP, prec, ladder, C, workers=workers).to_report(),
          "scan")
    for case in (3, 2, 1):
        stage(corollary_sweep(case, prec, ladder, C), f"case-{case}")
    stage(primorial_sweep(PRIMORIAL_THRESHOLD_K, bridge_k, prec, ladder, C), "primorial")
    stage(check_theorem31_chain(bridge_k, prec, ladder, C), "large-n")
    table = default_table()
    stage(Report("lemma-spot-checks", [
        check_lemma22(table.index_of(10007), prec, ladder, table),
        check_lemma22(bridge_k, prec, ladder, table),
        check_lemma24(BRIDGE_PRIME, prec, ladder, table),
    ]))
    audit = coverage_audit(segments)
    stage(Report("coverage-audit", [audit], {"segments": [
        {"label": s.label, "lo": s.lo, "hi": s.hi} for s in sorted(segments, key=lambda s: s.lo)]}))
    return report
