"""Prime tables, odd primorials and certified Chebyshev-theta style log sums."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate

from .arith import Factorization
from .errors import UsageError
from .realbounds import Interval

DEFAULT_LIMIT = 100_000

# first prime >= 20000; the bridge between the primorial sweep and the
# large-n theorem hypothesis "p_k >= 20000"
BRIDGE_PRIME = 20011


@dataclass(frozen=True, eq=False)
class PrimeTable:
    limit: int
    primes: tuple[int, ...]
    spf: array

    def __len__(self) -> int:
        return len(self.primes)

    def prime(self, k: int) -> int:
        """The k-th prime, 1-based (``prime(1) == 2``)."""
        if not 1 <= k <= len(self.primes):
            raise UsageError(f"k={k} outside table (have {len(self.primes)} primes up to {self.limit})")
        return self.primes[k - 1]

    def index_of(self, p: int) -> int:
        """1-based index k with ``prime(k) == p``."""
        from bisect import bisect_left

        i = bisect_left(self.primes, p)
        if i == len(self.primes) or self.primes[i] != p:
            raise UsageError(f"{p} is not a prime in the table")
        return i + 1

    def is_prime(self, n: int) -> bool:
        if not 2 <= n <= self.limit:
            raise UsageError(f"{n} outside sieve range [2, {self.limit}]")
        return self.spf[n] == n


def sieve_up_to(limit: int) -> PrimeTable:
    """Smallest-prime-factor sieve on ``[0, limit]``."""
    if limit < 3:
        raise UsageError(f"sieve limit must be >= 3, got {limit}")
    spf = array("l", range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] != p:
            continue
        for m in range(p * p, limit + 1, p):
            if spf[m] == m:
                spf[m] = p
    primes = tuple(m for m in range(2, limit + 1) if spf[m] == m)
    return PrimeTable(limit, primes, spf)


@lru_cache(maxsize=4)
def default_table(limit: int = DEFAULT_LIMIT) -> PrimeTable:
    return sieve_up_to(limit)


@dataclass(frozen=True)
class PrimorialSpec:
    k: int
    includes_two: bool
    factorization: Factorization

    @property
    def value(self) -> int:
        return self.factorization.value()


def odd_primorial(k: int, table: PrimeTable | None = None) -> PrimorialSpec:
    """N'_k = 3 * 5 * ... * p_k."""
    if k < 2:
        raise UsageError(f"odd primorial needs k >= 2, got {k}")
    table = table or default_table()
    table.prime(k)
    return PrimorialSpec(k, False, Factorization.from_pairs((p, 1) for p in table.primes[1:k]))


def primorial(k: int, table: PrimeTable | None = None) -> PrimorialSpec:
    """N_k = 2 * 3 * ... * p_k."""
    if k < 1:
        raise UsageError(f"primorial needs k >= 1, got {k}")
    table = table or default_table()
    table.prime(k)
    return PrimorialSpec(k, True, Factorization.from_pairs((p, 1) for p in table.primes[:k]))


def log_theta_sum(k: int, table: PrimeTable | None = None, precision: int = 128,
                  odd: bool = True) -> Interval:
    """Enclosure of sum(log p_i) over i = 2..k (``odd``) or i = 1..k.

    Each log is enclosed separately and the sum is outward-rounded after every
    addition, so the result is the log of N'_k (resp. N_k) without forming it.
    """
    if precision < 64:
        raise UsageError("precision must be >= 64 bits")
    table = table or default_table()
    table.prime(k)
    start = 1 if odd else 0
    total = Interval.exact(0, precision)
    for p in table.primes[start:k]:
        total = total + Interval.log_of(p, precision)
    return total


def log_theta_prefix(k_max: int, table: PrimeTable | None = None,
                     precision: int = 128) -> list[Interval]:
    """``out[k]`` = log_theta_sum(k) for every 2 <= k <= k_max (indices 0, 1 unused)."""
    table = table or default_table()
    table.prime(k_max)
    logs = [Interval.log_of(p, precision) for p in table.primes[1:k_max]]
    sums = list(accumulate(logs, lambda a, b: a + b))
    zero = Interval.exact(0, precision)
    return [zero, zero] + sums
