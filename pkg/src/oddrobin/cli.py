"""Command-line entry point.

Exit codes: 0 every verdict holds, 1 some verdict fails, 2 some verdict is
undecided after the precision ladder, 64 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .errors import DomainError, UsageError
from .pipeline import LEMMA_NAMES, RunConfig, ca_list_report, constants_report, lemma_report, verify_all
from .realbounds import PRECISIONS
from .report import PipelineReport, exit_code, render
from .robin import primorial_sweep
from .scan import brute_force_scan

EX_USAGE = 64

log = logging.getLogger("oddrobin")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _common(suppress: bool) -> argparse.ArgumentParser:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision", type=int, choices=PRECISIONS, default=default(128),
                   help="working precision in bits (default 128)")
    p.add_argument("--no-ladder", dest="ladder", action="store_false", default=default(True),
                   help="do not retry undecided comparisons at 256 and 512 bits")
    p.add_argument("--format", choices=("json", "csv", "text"), default=default("text"))
    p.add_argument("--out", metavar="PATH", default=default(None), help="write the report here instead of stdout")
    p.add_argument("--parallel", action="store_true", default=default(False),
                   help="split the brute-force scan across processes")
    p.add_argument("--unsound-C", dest="unsound_C", type=Fraction, default=default(None), metavar="VALUE",
                   help="DEBUG ONLY: replace the certified constant C; results are unsound")
    p.add_argument("-v", "--verbose", action="store_true", default=default(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oddrobin", parents=[_common(False)],
                     description="Certified verification of sigma(n)/n <= (e^gamma/2) log log n + C/log log n "
                                 "for odd n >= 3.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(True)]

    verify = sub.add_parser("verify", parents=common, help="run the full pipeline")
    verify.add_argument("target", choices=["all"])

    scan = sub.add_parser("scan", parents=common, help="brute-force check of odd n in a range")
    scan.add_argument("--from", dest="scan_from", type=int, default=3)
    scan.add_argument("--to", dest="scan_to", type=int, default=45045)

    ca = sub.add_parser("ca", parents=common, help="odd colossally abundant numbers")
    ca.add_argument("action", choices=["list"])
    ca.add_argument("--count", type=int, default=30)

    sweep = sub.add_parser("primorial-sweep", parents=common, help="N'_k/phi(N'_k) check over a range of k")
    sweep.add_argument("--from", dest="sweep_from", type=int, default=54)
    sweep.add_argument("--to", dest="sweep_to", type=int, default=None,
                       help="last k (default: index of the first prime >= 20000)")

    lemma = sub.add_parser("lemma", parents=common, help="numeric instance of a supporting lemma")
    lemma.add_argument("--name", choices=LEMMA_NAMES, required=True)

    sub.add_parser("constants", parents=common, help="certified constants and cross-checks")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    command = "verify-all" if args.command == "verify" else args.command
    fields = {k: v for k, v in vars(args).items()
              if k in RunConfig.__dataclass_fields__ and k != "command"}
    if args.command == "lemma":
        fields["lemma"] = args.name
    return RunConfig(command=command, **fields)


def run(config: RunConfig) -> PipelineReport:
    prec, ladder, C = config.precision, config.ladder, config.unsound_C
    if config.command == "verify-all":
        return verify_all(config)
    report = PipelineReport(config.echo())
    if config.command == "scan":
        workers = 4 if config.parallel else 1
        report.stages.append(brute_force_scan(config.scan_from, config.scan_to, prec, ladder, C,
                                              workers=workers).to_report())
    elif config.command == "ca":
        report.stages.append(ca_list_report(config.count, prec, ladder))
    elif config.command == "primorial-sweep":
        report.stages.append(primorial_sweep(config.sweep_from, config.sweep_end, prec, ladder, C))
    elif config.command == "lemma":
        report.stages.append(lemma_report(config.lemma, prec, ladder, C))
    elif config.command == "constants":
        report.stages.append(constants_report(prec, C))
    else:
        raise UsageError(f"unknown command {config.command!r}")
    return report


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(args)
        report = run(config)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"oddrobin: error: {exc}", file=sys.stderr)
        return EX_USAGE
    if config.unsound_C is not None:
        log.warning("C replaced by %s: this run is UNSOUND and for negative testing only", config.unsound_C)
    text = render(report, config.format)
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(report.overall)


if __name__ == "__main__":
    sys.exit(main())
