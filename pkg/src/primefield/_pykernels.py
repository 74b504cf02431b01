"""Pure numpy sieve kernels.

Reference implementation of the kernel API; the compiled module
``primefield._ckernels`` exposes the same four functions.  The sieve is
odd-only and segmented, so memory stays O(segment) for the streaming
reductions (``count_primes``, ``odd_prime_exp_sum``).
"""
import math

import numpy as np

# odd numbers per segment; the compiled kernel uses a smaller, cache-sized one
SEGMENT = 1 << 21


def base_odd_primes(limit):
    """Odd primes p with p*p <= limit, ascending, as int64."""
    root = math.isqrt(max(int(limit), 0))
    if root < 3:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(root + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(root) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    out = np.flatnonzero(is_p).astype(np.int64)
    return out[out > 2]


def _odd_segments(limit, segment=SEGMENT):
    """Yield (k0, flags) where flags[j] marks 2*(k0+j)+1 prime; covers 3..limit."""
    kmax = (limit - 1) // 2
    bp = base_odd_primes(limit)
    nxt = (bp * bp - 1) // 2
    for k0 in range(0, kmax + 1, segment):
        k1 = min(k0 + segment, kmax + 1)
        flags = np.ones(k1 - k0, dtype=bool)
        if k0 == 0:
            flags[0] = False
        for i in range(bp.size):
            j = nxt[i]
            if j >= k1:
                if j == (bp[i] * bp[i] - 1) // 2:
                    break
                continue
            p = bp[i]
            flags[j - k0 :: p] = False
            # first index >= k1 in the progression j, j+p, ...
            nxt[i] = j + ((k1 - j + p - 1) // p) * p
        yield k0, flags


def primes_upto(limit):
    """All primes <= limit as an ascending int64 array."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    chunks = [np.array([2], dtype=np.int64)]
    for k0, flags in _odd_segments(limit):
        chunks.append(2 * (k0 + np.flatnonzero(flags).astype(np.int64)) + 1)
    return np.concatenate(chunks)


def count_primes(limit):
    limit = int(limit)
    if limit < 2:
        return 0
    total = 1
    for _, flags in _odd_segments(limit):
        total += int(np.count_nonzero(flags))
    return total


def odd_prime_exp_sum(limit, power, re_z, im_z):
    """Sum of p**power * exp(-p*z) over odd primes 3 <= p <= limit.

    Returns ``(re_hi, re_lo, im_hi, im_lo, count)``; the value is
    ``re_hi + re_lo`` (same for the imaginary part).  Each segment is summed
    with ``math.fsum`` and the segment partials are summed with ``fsum`` again,
    so the result is exactly rounded and ``*_lo`` is always 0 here.
    """
    limit = int(limit)
    re_parts, im_parts = [], []
    count = 0
    if limit < 3:
        return 0.0, 0.0, 0.0, 0.0, 0
    for k0, flags in _odd_segments(limit):
        p = (2 * (k0 + np.flatnonzero(flags)) + 1).astype(np.float64)
        count += p.size
        if power == 0:
            w = np.exp(-re_z * p)
        elif power == 1:
            w = p * np.exp(-re_z * p)
        elif power == -1:
            w = np.exp(-re_z * p) / p
        else:
            w = np.power(p, power) * np.exp(-re_z * p)
        if im_z == 0.0:
            re_parts.append(math.fsum(w))
        else:
            re_parts.append(math.fsum(w * np.cos(im_z * p)))
            im_parts.append(-math.fsum(w * np.sin(im_z * p)))
    return math.fsum(re_parts), 0.0, math.fsum(im_parts), 0.0, count
