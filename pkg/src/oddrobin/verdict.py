"""Certified three-valued outcomes and the precision ladder that produces them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Union

from .realbounds import PRECISIONS, Interval

Side = Union[Interval, Fraction, None]


class Outcome(str, Enum):
    HOLDS = "Holds"
    HOLDS_WITH_EQUALITY = "HoldsWithEquality"
    FAILS = "Fails"
    UNDECIDED = "Undecided"

    @property
    def ok(self) -> bool:
        return self in (Outcome.HOLDS, Outcome.HOLDS_WITH_EQUALITY)


def combine(outcomes: Iterable[Outcome]) -> Outcome:
    """Fails beats Undecided beats Holds; equality counts as Holds."""
    seen = set(outcomes)
    if Outcome.FAILS in seen:
        return Outcome.FAILS
    if Outcome.UNDECIDED in seen:
        return Outcome.UNDECIDED
    return Outcome.HOLDS


@dataclass(frozen=True)
class Verdict:
    """Outcome of the claim ``lhs < rhs`` (or a structural claim when both sides are None)."""

    subject: str
    outcome: Outcome
    lhs: Side = None
    rhs: Side = None
    precision_used: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.outcome.ok

    def __repr__(self) -> str:
        return (f"Verdict({self.subject!r}, {self.outcome.value}, lhs={_brief(self.lhs)}, "
                f"rhs={_brief(self.rhs)}, precision_used={self.precision_used})")


def _brief(x: Side) -> str:
    if isinstance(x, Fraction) and max(x.numerator.bit_length(), x.denominator.bit_length()) > 128:
        return f"~{Interval.exact(x, 64)!r}"
    return repr(x)


@dataclass
class Report:
    name: str
    verdicts: list[Verdict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def outcome(self) -> Outcome:
        return combine(v.outcome for v in self.verdicts)

    @property
    def ok(self) -> bool:
        return self.outcome.ok

    def __len__(self) -> int:
        return len(self.verdicts)


def precision_ladder(precision: int, ladder: bool = True) -> list[int]:
    if not ladder:
        return [precision]
    return [precision] + [p for p in PRECISIONS if p > precision]


def _as_interval(x, prec: int) -> Interval:
    return Interval.coerce(x, prec)


def certify_lt(subject: str, lhs: Callable[[int], object], rhs: Callable[[int], object],
               precision: int = 128, ladder: bool = True, note: str = "") -> Verdict:
    """Decide ``lhs < rhs``, retrying up the precision ladder while the enclosures overlap.

    ``lhs`` and ``rhs`` map a precision to an Interval or an exact rational. Two
    exact sides are compared exactly.
    """
    left = right = None
    prec = precision
    for prec in precision_ladder(precision, ladder):
        left, right = lhs(prec), rhs(prec)
        if isinstance(left, (int, Fraction)) and isinstance(right, (int, Fraction)):
            outcome = Outcome.HOLDS if left < right else Outcome.FAILS
            return Verdict(subject, outcome, Fraction(left), Fraction(right), prec, note)
        li, ri = _as_interval(left, prec), _as_interval(right, prec)
        if li.certainly_lt(ri):
            return Verdict(subject, Outcome.HOLDS, _snap(left), _snap(right), prec, note)
        if li.certainly_gt(ri):
            return Verdict(subject, Outcome.FAILS, _snap(left), _snap(right), prec, note)
    return Verdict(subject, Outcome.UNDECIDED, _snap(left), _snap(right), prec, note)


def _snap(x) -> Side:
    if isinstance(x, int):
        return Fraction(x)
    return x
