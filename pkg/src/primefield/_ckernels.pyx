# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled segmented-sieve kernels (same API as primefield._pykernels).

Odd-only byte sieve with a cache-sized segment; the per-prime "next
multiple" offsets persist across segments.  Weighted sums use Neumaier
compensation in a fixed sequential order, so results are bit-reproducible.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, pow, fabs, log
from libc.stdint cimport int64_t, uint8_t
from libc.string cimport memset

from primefield._pykernels import base_odd_primes

cnp.import_array()

# odd numbers per segment: 256 KiB of flags
cdef int64_t SEGMENT = 1 << 18


cdef inline void _fill(uint8_t* flags, int64_t k0, int64_t n,
                       const int64_t* bp, int64_t* nxt, Py_ssize_t nbp) noexcept nogil:
    cdef Py_ssize_t i
    cdef int64_t p, j
    cdef int64_t k1 = k0 + n
    memset(flags, 1, <size_t>n)
    if k0 == 0:
        flags[0] = 0
    for i in range(nbp):
        p = bp[i]
        j = nxt[i]
        if j >= k1:
            if j == (p * p - 1) // 2:
                break
            continue
        while j < k1:
            flags[j - k0] = 0
            j += p
        nxt[i] = j


cdef inline void _neumaier(double* s, double* c, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def _setup(int64_t limit):
    bp = np.ascontiguousarray(base_odd_primes(limit), dtype=np.int64)
    nxt = (bp * bp - 1) // 2
    return bp, np.ascontiguousarray(nxt, dtype=np.int64)


def count_primes(limit):
    cdef int64_t lim = int(limit)
    if lim < 2:
        return 0
    if lim < 3:
        return 1
    bp_arr, nxt_arr = _setup(lim)
    cdef int64_t[::1] bp = bp_arr
    cdef int64_t[::1] nxt = nxt_arr
    cdef Py_ssize_t nbp = bp.shape[0]
    cdef uint8_t[::1] flags = np.empty(SEGMENT, dtype=np.uint8)
    cdef int64_t kmax = (lim - 1) // 2
    cdef int64_t k0 = 0, n, j
    cdef int64_t total = 1
    with nogil:
        while k0 <= kmax:
            n = SEGMENT if k0 + SEGMENT <= kmax + 1 else kmax + 1 - k0
            _fill(&flags[0], k0, n, &bp[0] if nbp else NULL, &nxt[0] if nbp else NULL, nbp)
            for j in range(n):
                total += flags[j]
            k0 += n
    return int(total)


def primes_upto(limit):
    cdef int64_t lim = int(limit)
    if lim < 2:
        return np.zeros(0, dtype=np.int64)
    if lim < 3:
        return np.array([2], dtype=np.int64)
    # Rosser-Schoenfeld: pi(x) < 1.25506 x / log x for x > 1
    cdef int64_t cap = <int64_t>(1.25506 * lim / log(<double>lim)) + 16
    out_arr = np.empty(cap, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    bp_arr, nxt_arr = _setup(lim)
    cdef int64_t[::1] bp = bp_arr
    cdef int64_t[::1] nxt = nxt_arr
    cdef Py_ssize_t nbp = bp.shape[0]
    cdef uint8_t[::1] flags = np.empty(SEGMENT, dtype=np.uint8)
    cdef int64_t kmax = (lim - 1) // 2
    cdef int64_t k0 = 0, n, j
    cdef int64_t m = 1
    out[0] = 2
    with nogil:
        while k0 <= kmax:
            n = SEGMENT if k0 + SEGMENT <= kmax + 1 else kmax + 1 - k0
            _fill(&flags[0], k0, n, &bp[0] if nbp else NULL, &nxt[0] if nbp else NULL, nbp)
            for j in range(n):
                if flags[j]:
                    out[m] = 2 * (k0 + j) + 1
                    m += 1
            k0 += n
    return out_arr[:m].copy()


def odd_prime_exp_sum(limit, double power, double re_z, double im_z):
    """Sum of p**power * exp(-p*z) over odd primes 3 <= p <= limit.

    Returns ``(re_hi, re_lo, im_hi, im_lo, count)`` (Neumaier sum and
    compensation for each component).
    """
    cdef int64_t lim = int(limit)
    if lim < 3:
        return 0.0, 0.0, 0.0, 0.0, 0
    bp_arr, nxt_arr = _setup(lim)
    cdef int64_t[::1] bp = bp_arr
    cdef int64_t[::1] nxt = nxt_arr
    cdef Py_ssize_t nbp = bp.shape[0]
    cdef uint8_t[::1] flags = np.empty(SEGMENT, dtype=np.uint8)
    cdef int64_t kmax = (lim - 1) // 2
    cdef int64_t k0 = 0, n, j, count = 0
    cdef double s_re = 0.0, c_re = 0.0, s_im = 0.0, c_im = 0.0
    cdef double p, w
    cdef int kind
    if power == 0.0:
        kind = 0
    elif power == 1.0:
        kind = 1
    elif power == -1.0:
        kind = 2
    else:
        kind = 3
    with nogil:
        while k0 <= kmax:
            n = SEGMENT if k0 + SEGMENT <= kmax + 1 else kmax + 1 - k0
            _fill(&flags[0], k0, n, &bp[0] if nbp else NULL, &nxt[0] if nbp else NULL, nbp)
            for j in range(n):
                if not flags[j]:
                    continue
                p = <double>(2 * (k0 + j) + 1)
                count += 1
                w = exp(-re_z * p)
                if kind == 1:
                    w = w * p
                elif kind == 2:
                    w = w / p
                elif kind == 3:
                    w = w * pow(p, power)
                if im_z == 0.0:
                    _neumaier(&s_re, &c_re, w)
                else:
                    _neumaier(&s_re, &c_re, w * cos(im_z * p))
                    _neumaier(&s_im, &c_im, -w * sin(im_z * p))
            k0 += n
    return s_re, c_re, s_im, c_im, int(count)
