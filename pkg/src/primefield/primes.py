"""Prime tables and the arithmetic around them.

Goldbach and Polignac counts, the prime zeta function summed directly over
a sieve and through the Moebius inversion P(s) = sum_k mu(k)/k log zeta(ks),
and Mertens' constant B1 = gamma + sum_{k>=2} mu(k)/k log zeta(k).
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from primefield import kernels
from primefield.abel import AbelSumResult
from primefield.errors import DomainError
from primefield.modes import ModeSet
from primefield.special import EULER_GAMMA, zeta_minus_one

MAX_SIEVE_LIMIT = 2 ** 40


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to ``limit`` with O(1) membership.

    Membership uses a packed odd-only bitmap (limit/16 bytes).
    """

    limit: int
    primes: np.ndarray
    _bits: np.ndarray

    def __len__(self):
        return int(self.primes.size)

    def __contains__(self, n):
        return self.is_prime(n)

    def is_prime(self, n):
        n = int(n)
        if n < 1 or n > self.limit:
            if n > self.limit:
                raise DomainError(f"{n} is beyond the table limit {self.limit}")
            return False
        if n % 2 == 0:
            return n == 2
        k = (n - 1) // 2
        return bool((self._bits[k >> 3] >> (7 - (k & 7))) & 1)

    def contains(self, values):
        """Vectorised membership for an integer array (entries beyond limit raise)."""
        v = np.asarray(values, dtype=np.int64)
        if v.size and v.max() > self.limit:
            raise DomainError(f"values beyond the table limit {self.limit}")
        out = v == 2
        odd = (v > 0) & (v % 2 == 1)
        k = (v[odd] - 1) // 2
        out[odd] = ((self._bits[k >> 3] >> (7 - (k & 7))) & 1).astype(bool)
        return out


def sieve(limit):
    """All primes <= limit (segmented odd-only sieve)."""
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve needs limit >= 2, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise DomainError(f"sieve limit {limit} exceeds 2**40")
    primes = kernels.primes_upto(limit)
    flags = np.zeros((limit - 1) // 2 + 1, dtype=bool)
    flags[(primes[1:] - 1) // 2] = True
    return PrimeTable(limit, primes, np.packbits(flags))


def count_primes(limit):
    """pi(limit), streaming over segments (no table is materialised)."""
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"count_primes needs limit >= 2, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise DomainError(f"limit {limit} exceeds 2**40")
    return kernels.count_primes(limit)


@dataclass(frozen=True)
class PartitionCount:
    """Representations of an even ``n`` as p + q with p, q in a prime family.

    ``ordered`` counts (p, q) and (q, p) separately, ``unordered`` counts
    {p, q} once; ``diagonal`` is 1 when n/2 itself belongs to the family.
    """

    n: int
    modes: ModeSet
    ordered: int
    unordered: int
    diagonal: int


def _check_prime_family(modes):
    modes = ModeSet.parse(modes)
    if not modes.is_prime_family:
        raise DomainError(f"{modes.name} is not a prime family")
    return modes


def _family_members(table, modes):
    members = table.primes
    if modes is ModeSet.PRIMES_P_PRIME:
        members = np.concatenate(([1], members[1:]))
    return members


def goldbach_partitions(n, modes=ModeSet.PRIMES_P, table=None):
    """Count p + q = n with p, q drawn from ``modes`` (a prime family)."""
    n = int(n)
    modes = _check_prime_family(modes)
    if n < 2 or n % 2:
        raise DomainError(f"n must be an even integer >= 2, got {n}")
    if table is None or table.limit < n:
        table = sieve(max(n, 2))
    members = _family_members(table, modes)
    small = members[members <= n // 2]
    partner = n - small
    hit = table.contains(partner)
    if modes is ModeSet.PRIMES_P_PRIME:
        hit &= partner != 2
        hit |= partner == 1
    unordered = int(np.count_nonzero(hit))
    half = n // 2
    diagonal = int(modes.contains(half, table.is_prime))
    return PartitionCount(n, modes, 2 * unordered - diagonal, unordered, diagonal)


def goldbach_table(n_max, modes=ModeSet.PRIMES_P):
    """Ordered partition counts for every n = 0..n_max at once.

    Self-convolution of the family's indicator via a real FFT; counts are
    small integers so rounding the convolution is exact at these sizes.
    """
    n_max = int(n_max)
    modes = _check_prime_family(modes)
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    table = sieve(n_max)
    ind = np.zeros(n_max + 1)
    ind[_family_members(table, modes)] = 1.0
    size = 1 << (2 * n_max + 1).bit_length()
    ft = np.fft.rfft(ind, size)
    conv = np.fft.irfft(ft * ft, size)[: n_max + 1]
    return np.rint(conv).astype(np.int64)


def polignac_count(gap, limit, table=None):
    """Prime pairs (p, q) with q - p = gap and q <= limit."""
    gap, limit = int(gap), int(limit)
    if gap < 2 or gap % 2:
        raise DomainError(f"gap must be an even integer >= 2, got {gap}")
    if limit < gap + 2:
        raise DomainError(f"limit must be >= gap + 2, got {limit}")
    if table is None or table.limit < limit:
        table = sieve(limit)
    p = table.primes[table.primes <= limit - gap]
    return int(np.count_nonzero(table.contains(p + gap)))


def prime_zeta_direct(s, limit):
    """P(s) = sum_{p <= limit} p^{-s} with the tail bound limit^{1-s}/(s-1)."""
    s = float(s)
    limit = int(limit)
    if not s > 1.0:
        raise DomainError(f"the prime zeta series diverges for s <= 1 (got {s})")
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    hi, lo, _, _, count = kernels.odd_prime_exp_sum(limit, -s, 0.0, 0.0)
    value = math.fsum([2.0 ** -s, hi, lo])
    tail = math.exp((1.0 - s) * math.log(limit)) / (s - 1.0)
    return AbelSumResult(value, 0.0, limit, tail, count + 1)


def mobius(k):
    """Moebius function by trial division (meant for small k)."""
    k = int(k)
    if k < 1:
        raise DomainError(f"mobius needs k >= 1, got {k}")
    sign = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            sign = -sign
        d += 1
    if k > 1:
        sign = -sign
    return sign


def prime_zeta_mobius(s, k_max=64):
    """P(s) = sum_{k=1}^{k_max} mu(k)/k * log zeta(k s)."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"the prime zeta series diverges for s <= 1 (got {s})")
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    terms = []
    for k in range(1, k_max + 1):
        mu = mobius(k)
        if mu:
            terms.append(mu / k * math.log1p(zeta_minus_one(k * s)))
    return math.fsum(terms)


def mobius_tail_bound(s, k_max):
    """Bound on |sum_{k > k_max} mu(k)/k log zeta(k s)|.

    Uses log zeta(x) <= zeta(x) - 1 <= 2^{-x} (1 + 2/(x-1)).
    """
    s = float(s)
    x0 = (k_max + 1) * s
    c = 1.0 + 2.0 / (x0 - 1.0)
    return c * 2.0 ** -x0 / ((k_max + 1) * (1.0 - 2.0 ** -s))


@lru_cache(maxsize=None)
def mertens_constant(k_max=64):
    """B1 = gamma + sum_{k=2}^{k_max} mu(k)/k * log zeta(k)."""
    if k_max < 2:
        raise DomainError(f"k_max must be >= 2, got {k_max}")
    terms = [EULER_GAMMA]
    for k in range(2, k_max + 1):
        mu = mobius(k)
        if mu:
            terms.append(mu / k * math.log1p(zeta_minus_one(k)))
    return math.fsum(terms)
