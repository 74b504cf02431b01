"""Damped (Abel) mode sums with certified truncation.

Every sum here has the form S = sum_{n in M} n^j exp(-n z) with j in
{-1, 0, 1} and Re z = a > 0.  The omitted part beyond a cutoff N is bounded
by the same sum over *all* integers n > N, which has a closed form:

    j =  0:  x^{N+1} / (1 - x)
    j = -1:  x^{N+1} / ((N+1) (1 - x))          (since 1/n <= 1/(N+1))
    j =  1:  x^{N+1} ((N+1)(1 - x) + x) / (1 - x)^2

with x = exp(-a).  For complex z the moduli |exp(-nz)| = x^n give the same
bounds.  The cutoff is the smallest N whose bound is within ``tol``.
"""
import math
from dataclasses import dataclass

import numpy as np

from primefield import kernels
from primefield.errors import CapacityError, DomainError
from primefield.modes import ModeSet

MIN_DAMPING = 1e-8
MIN_TOL = 1e-13
# largest cutoff we are willing to sieve to (about half a minute compiled)
MAX_CUTOFF = 10 ** 10
_BLOCK = 1 << 20
# guards the closed-form bounds against their own rounding
_SAFETY = 1.0 + 1e-12


@dataclass(frozen=True)
class AbelSumResult:
    """A truncated damped series with a certified bound on the omitted tail.

    ``value`` is a float, or a complex for complex damping; ``cutoff`` is the
    largest index included; ``terms`` is how many modes were summed.
    """

    value: object
    damping: object
    cutoff: int
    tail_bound: float
    terms: int


def tail_bound(power, a, cutoff):
    """Upper bound on sum_{n > cutoff} n^power exp(-a n), power in {-1, 0, 1}."""
    if power not in (-1, 0, 1):
        raise DomainError(f"power must be -1, 0 or 1, got {power}")
    m = cutoff + 1
    one_minus_x = -math.expm1(-a)
    log_head = -a * m
    if power == 0:
        val = math.exp(log_head) / one_minus_x
    elif power == -1:
        val = math.exp(log_head) / (m * one_minus_x)
    else:
        x = math.exp(-a)
        val = math.exp(log_head) * (m * one_minus_x + x) / one_minus_x ** 2
    return val * _SAFETY


def find_cutoff(power, a, tol, max_cutoff=MAX_CUTOFF):
    """Smallest N >= 2 with tail_bound(power, a, N) <= tol.

    Raises :class:`CapacityError` when N would exceed ``max_cutoff``.
    """
    lo = 2
    if tail_bound(power, a, lo) <= tol:
        return lo
    hi = 4
    while tail_bound(power, a, hi) > tol:
        if hi >= max_cutoff:
            raise CapacityError(f"tolerance {tol:g} needs a cutoff beyond {max_cutoff}",
                                tail_bound(power, a, max_cutoff), max_cutoff)
        lo, hi = hi, min(2 * hi, max_cutoff)
    # bound(lo) > tol >= bound(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(power, a, mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def _weights(n, power, z):
    w = np.exp(-z * n)
    if power == 1:
        w = w * n
    elif power == -1:
        w = w / n
    return w


def _progression_sum(first, step, cutoff, power, z):
    """sum over n = first, first+step, ... <= cutoff; returns (value, count)."""
    if cutoff < first:
        return 0.0, 0
    count = (cutoff - first) // step + 1
    re_parts, im_parts = [], []
    for start in range(0, count, _BLOCK):
        k = np.arange(start, min(start + _BLOCK, count), dtype=np.float64)
        w = _weights(first + step * k, power, z)
        re_parts.append(math.fsum(w.real))
        if isinstance(z, complex):
            im_parts.append(math.fsum(w.imag))
    if isinstance(z, complex):
        return complex(math.fsum(re_parts), math.fsum(im_parts)), count
    return math.fsum(re_parts), count


def _prime_sum(modes, cutoff, power, z):
    """Prime family sum: odd-prime kernel plus the 2 (P) or the 1 (P') term."""
    zc = complex(z)
    re_hi, re_lo, im_hi, im_lo, count = kernels.odd_prime_exp_sum(
        cutoff, power, zc.real, zc.imag)
    extra = 2 if modes is ModeSet.PRIMES_P else 1
    head = extra ** power * np.exp(-zc * extra)
    re = math.fsum([head.real, re_hi, re_lo])
    if isinstance(z, complex):
        return complex(re, math.fsum([head.imag, im_hi, im_lo])), count + 1
    return re, count + 1


def _check_damping(a):
    if not math.isfinite(a) or a < MIN_DAMPING:
        raise DomainError(f"damping must be >= {MIN_DAMPING:g}, got {a}")


def mode_sum(modes, z, power=0, tol=MIN_TOL, cutoff=None):
    """sum_{n in modes} n^power exp(-n z) with a certified tail.

    ``z`` may be real or complex (Re z >= 1e-8).  Pass ``cutoff`` to fix N
    instead of deriving it from ``tol``; the bound is then reported as is.
    """
    modes = ModeSet.parse(modes)
    a = z.real if isinstance(z, complex) else float(z)
    _check_damping(a)
    if cutoff is None:
        if not tol >= MIN_TOL:
            raise DomainError(f"tol must be >= {MIN_TOL:g}, got {tol}")
        cutoff = find_cutoff(power, a, tol)
    else:
        cutoff = int(cutoff)
        if cutoff < 2 or cutoff > MAX_CUTOFF:
            raise DomainError(f"cutoff must be in [2, {MAX_CUTOFF}], got {cutoff}")
    if modes.is_prime_family:
        value, terms = _prime_sum(modes, cutoff, power, z)
    else:
        first, step = modes.progression
        value, terms = _progression_sum(first, step, cutoff, power, z)
    return AbelSumResult(value, z, cutoff, tail_bound(power, a, cutoff), terms)


def _prime_modes(modes):
    modes = ModeSet.parse(modes)
    if not modes.is_prime_family:
        raise DomainError(f"expected a prime mode set, got {modes.name}")
    return modes


def f_abel(a, modes=ModeSet.PRIMES_P, tol=MIN_TOL, cutoff=None):
    """f(a) = sum_{p in modes} exp(-a p) / p."""
    return mode_sum(_prime_modes(modes), float(a), -1, tol, cutoff)


def g_abel(a, modes=ModeSet.PRIMES_P, tol=MIN_TOL, cutoff=None):
    """g(a) = sum_{p in modes} p exp(-a p)."""
    return mode_sum(_prime_modes(modes), float(a), 1, tol, cutoff)


def mode_sum_complex(z, modes=ModeSet.PRIMES_P, tol=MIN_TOL):
    """sum_{n in modes} exp(-n z) for complex z with Re z > 0."""
    return mode_sum(modes, complex(z), 0, tol)


def damped_energy_sum(modes, eps, R, rel_tol=1e-15):
    """Point-split vacuum energy density on a circle of radius R.

    Integer families: (2 pi R)^{-1} sum_n w_n exp(-eps n / R), w_n = n / R.
    Prime families: -(4 pi R^2)^{-1} g(eps / R), the fermionic sign included.
    The tail is certified relative to the leading size 1/a^2 of the sum.
    """
    modes = ModeSet.parse(modes)
    eps, R = float(eps), float(R)
    if not (eps > 0 and R > 0):
        raise DomainError(f"eps and R must be positive, got eps={eps}, R={R}")
    a = eps / R
    if not MIN_DAMPING <= a <= 1.0:
        raise DomainError(f"eps/R must lie in [1e-8, 1], got {a}")
    tol = max(rel_tol / (a * a), 1e-300)
    cutoff = find_cutoff(1, a, tol)
    res = mode_sum(modes, a, 1, cutoff=cutoff)
    if modes.is_prime_family:
        return -res.value / (4.0 * math.pi * R * R)
    return res.value / (2.0 * math.pi * R * R)
