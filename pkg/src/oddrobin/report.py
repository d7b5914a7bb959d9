"""Pipeline report assembly and its JSON / CSV / text encodings.

Enclosure endpoints are written as outward-rounded decimal strings with an
explicit digit count, so reports are byte-identical across runs and platforms.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources

from . import __version__
from .realbounds import Interval, decimal_string
from .verdict import Outcome, Report, Verdict, combine

DIGITS = 20
_MAX_EXACT_BITS = 200
_SAFE_INT = 2**53


@dataclass
class PipelineReport:
    config: dict
    stages: list[Report] = field(default_factory=list)
    version: str = __version__

    @property
    def overall(self) -> Outcome:
        return combine(s.outcome for s in self.stages)

    @property
    def unsound(self) -> bool:
        return self.config.get("unsound_C") is not None


def exit_code(outcome: Outcome) -> int:
    return {Outcome.FAILS: 1, Outcome.UNDECIDED: 2}.get(outcome, 0)


def encode_side(x, digits: int = DIGITS):
    if x is None:
        return None
    if isinstance(x, Interval):
        lo, hi = x.decimal(digits)
        return {"kind": "interval", "lo": lo, "hi": hi, "digits": digits, "precision": x.prec}
    q = Fraction(x)
    exact = None
    if max(abs(q.numerator).bit_length(), q.denominator.bit_length()) <= _MAX_EXACT_BITS:
        exact = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return {"kind": "rational", "exact": exact, "lo": decimal_string(q, digits, up=False),
            "hi": decimal_string(q, digits, up=True), "digits": digits}


def encode_value(x, digits: int = DIGITS):
    """JSON-safe form of a summary value."""
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        if abs(x) < _SAFE_INT:
            return x
        if x.bit_length() <= _MAX_EXACT_BITS:
            return str(x)
        return f"~{decimal_string(Fraction(x), digits, up=False)}"
    if isinstance(x, (Interval, Fraction)):
        return encode_side(x, digits)
    if isinstance(x, dict):
        return {str(k): encode_value(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_value(v, digits) for v in x]
    return str(x)


def encode_verdict(v: Verdict, digits: int = DIGITS) -> dict:
    return {
        "subject": v.subject,
        "outcome": v.outcome.value,
        "lhs": encode_side(v.lhs, digits),
        "rhs": encode_side(v.rhs, digits),
        "precision_used": v.precision_used,
        "note": v.note,
    }


def to_dict(report: PipelineReport, digits: int = DIGITS) -> dict:
    return {
        "version": report.version,
        "config": encode_value(report.config, digits),
        "unsound": report.unsound,
        "stages": [
            {
                "name": s.name,
                "outcome": s.outcome.value,
                "verdicts": [encode_verdict(v, digits) for v in s.verdicts],
                "summary": encode_value(s.summary, digits),
            }
            for s in report.stages
        ],
        "overall": report.overall.value,
    }


def to_json(report: PipelineReport, digits: int = DIGITS) -> str:
    return json.dumps(to_dict(report, digits), indent=2, ensure_ascii=False) + "\n"


CSV_COLUMNS = ["stage", "subject", "outcome", "precision_used", "lhs_kind", "lhs_lo", "lhs_hi",
               "rhs_kind", "rhs_lo", "rhs_hi", "digits", "note"]


def to_csv(report: PipelineReport, digits: int = DIGITS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for stage in report.stages:
        for v in stage.verdicts:
            row = [stage.name, v.subject, v.outcome.value, v.precision_used]
            for side in (encode_side(v.lhs, digits), encode_side(v.rhs, digits)):
                row += [side["kind"], side["lo"], side["hi"]] if side else ["", "", ""]
            row += [digits, v.note]
            writer.writerow(row)
    return buf.getvalue()


def _fmt_summary(value) -> str:
    if isinstance(value, dict) and value.get("exact"):
        return value["exact"]
    if isinstance(value, dict) and "lo" in value and "hi" in value:
        return f"[{value['lo']}, {value['hi']}]"
    return json.dumps(value, ensure_ascii=False) if isinstance(value, (list, dict)) else str(value)


def to_text(report: PipelineReport, digits: int = 12, max_rows: int = 40) -> str:
    lines = [f"oddrobin {report.version}"]
    if report.unsound:
        lines.append(f"WARNING: UNSOUND RUN, C replaced by {report.config['unsound_C']}")
    for stage in report.stages:
        lines.append("")
        lines.append(f"== {stage.name}: {stage.outcome.value}")
        for key, value in encode_value(stage.summary, digits).items():
            lines.append(f"   {key}: {_fmt_summary(value)}")
        shown = stage.verdicts if len(stage.verdicts) <= max_rows else \
            [v for v in stage.verdicts if not v.ok][:max_rows]
        for v in shown:
            lines.append(f"   [{v.outcome.value}] {v.subject}")
            for label, side in (("lhs", v.lhs), ("rhs", v.rhs)):
                enc = encode_side(side, digits)
                if enc:
                    lines.append(f"       {label} in [{enc['lo']}, {enc['hi']}]")
            if v.note:
                lines.append(f"       {v.note}")
        if len(shown) < len(stage.verdicts):
            lines.append(f"   ({len(stage.verdicts) - len(shown)} further verdicts hold; "
                         f"use --format json or csv for all rows)")
    lines.append("")
    lines.append(f"overall: {report.overall.value}")
    return "\n".join(lines) + "\n"


def render(report: PipelineReport, fmt: str) -> str:
    return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](report)


def load_schema() -> dict:
    return json.loads(resources.files("oddrobin").joinpath("report.schema.json").read_text())
