"""Exact arithmetic over prime factorizations.

Ratios are plain :class:`fractions.Fraction` values, which are always kept in
lowest terms and compare exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import TYPE_CHECKING, Iterable

from .errors import UsageError

if TYPE_CHECKING:
    from .primes import PrimeTable

ExactRatio = Fraction

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class Factorization:
    """Ordered ``(prime, exponent)`` pairs; primes strictly increasing, exponents >= 1."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, a in self.pairs:
            if p <= last or a < 1:
                raise UsageError(f"malformed factorization {self.pairs!r}")
            last = p

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> Factorization:
        return cls(tuple(sorted((int(p), int(a)) for p, a in pairs)))

    @classmethod
    def from_exponents(cls, primes: Iterable[int], exponents: Iterable[int]) -> Factorization:
        """Pair primes with exponents, dropping zero exponents."""
        return cls(tuple((p, a) for p, a in zip(primes, exponents) if a))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.pairs)

    def exponent(self, p: int) -> int:
        for q, a in self.pairs:
            if q == p:
                return a
        return 0

    def is_odd(self) -> bool:
        return not self.pairs or self.pairs[0][0] != 2

    def value(self) -> int:
        return prod(p**a for p, a in self.pairs)

    def __mul__(self, other: Factorization) -> Factorization:
        merged = dict(self.pairs)
        for p, a in other.pairs:
            merged[p] = merged.get(p, 0) + a
        return Factorization(tuple(sorted(merged.items())))

    def times_prime(self, p: int) -> Factorization:
        return self * Factorization(((p, 1),))

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return "·".join(str(p) if a == 1 else f"{p}{str(a).translate(_SUPERSCRIPT)}"
                        for p, a in self.pairs)

    def ascii(self) -> str:
        if not self.pairs:
            return "1"
        return "*".join(str(p) if a == 1 else f"{p}^{a}" for p, a in self.pairs)


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Factor ``n`` by walking the smallest-prime-factor table."""
    if not 2 <= n <= table.limit:
        raise UsageError(f"cannot factorize {n}: outside sieve range [2, {table.limit}]")
    spf = table.spf
    pairs = []
    while n > 1:
        p = spf[n]
        a = 0
        while n % p == 0:
            n //= p
            a += 1
        pairs.append((p, a))
    return Factorization(tuple(pairs))


def sigma(f: Factorization) -> int:
    """Sum of divisors of the integer with factorization ``f``."""
    return prod((p ** (a + 1) - 1) // (p - 1) for p, a in f.pairs)


def sigma_over_n(f: Factorization) -> Fraction:
    num = 1
    den = 1
    for p, a in f.pairs:
        num *= p ** (a + 1) - 1
        den *= p**a * (p - 1)
    return Fraction(num, den)


def n_over_phi(f: Factorization) -> Fraction:
    """``n / phi(n)`` = prod p/(p-1) over the distinct primes of ``n``."""
    return Fraction(prod(f.primes), prod(p - 1 for p in f.primes))


def value(f: Factorization) -> int:
    return f.value()
