"""Real zeta, complex Gamma and Gamma Taylor coefficients at 1 and 2.

The Gamma derivatives are assembled from the classical expansion

    log Gamma(1 + z) = -gamma z + sum_{j>=2} (-1)^j zeta(j) z^j / j

so every coefficient is an exact polynomial in Euler's constant and
zeta(2), zeta(3), ...; no numerical differentiation is involved.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from primefield.errors import DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061

__all__ = [
    "EULER_GAMMA",
    "PowerSeries",
    "zeta_real",
    "zeta_minus_one",
    "gamma_complex",
    "log_gamma_series_at_1",
    "gamma_series",
    "gamma_derivatives",
    "exp_series",
]


def _bernoulli_even(count):
    """B_2, B_4, ..., B_{2*count} as Fractions (Akiyama-Tanigawa)."""
    n_max = 2 * count
    a = [Fraction(0)] * (n_max + 1)
    out = {}
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out[m] = a[0]
    return [out[2 * j] for j in range(1, count + 1)]


_EM_TERMS = 12
_EM_N = 16
# B_{2j} / (2j)!
_EM_COEFFS = [float(b / math.factorial(2 * j))
              for j, b in enumerate(_bernoulli_even(_EM_TERMS), start=1)]


def _zeta_terms(s):
    """Euler-Maclaurin pieces whose exact sum is zeta(s) - 1."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"zeta_real needs s > 1, got {s}")
    n = _EM_N
    terms = [k ** -s for k in range(2, n)]
    log_n = math.log(n)
    if s < 2.0:
        # N^{1-s}/(s-1) ~ 1/(s-1) dominates near s = 1: write N^{1-s} = 1 + expm1(.)
        # and split 1/(s-1) into two doubles so it is not rounded as a whole
        m = math.expm1((1.0 - s) * log_n)
        inv = Fraction(1) / Fraction(s - 1.0)
        inv_hi = float(inv)
        terms += [inv_hi, float(inv - Fraction(inv_hi)), m / (s - 1.0)]
    else:
        terms.append(math.exp((1.0 - s) * log_n) / (s - 1.0))
    n_pow = math.exp(-s * log_n)  # N^{-s}
    terms.append(0.5 * n_pow)
    # B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    rising = s
    power = n_pow / n
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        terms.append(coeff * rising * power)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= n * n
    return terms


def zeta_minus_one(s):
    """zeta(s) - 1 for real s > 1, accurate also when it is tiny (large s)."""
    return math.fsum(_zeta_terms(s))


def zeta_real(s):
    """Riemann zeta for real s > 1 (Euler-Maclaurin, |error| < 1e-14 on [1.01, 100])."""
    return math.fsum([1.0, *_zeta_terms(s)])


# zeta(j) for integer j, computed once at import and shared read-only
ZETA_INT = {j: zeta_real(j) for j in range(2, 33)}


# Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients)
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _log_gamma_right(z):
    """log Gamma(z) for Re z >= 1/2 (complex array, principal-ish branch)."""
    zm = z - 1.0
    acc = np.full(z.shape, _LANCZOS_C[0], dtype=complex)
    for k in range(1, _LANCZOS_C.size):
        acc = acc + _LANCZOS_C[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z):
    """log sin(pi z) for Im z >= 0, without overflow for large Im z."""
    out = np.empty(z.shape, dtype=complex)
    big = z.imag > 30.0
    zs = z[~big]
    # shift by the nearest integer so the argument reduction is exact
    r = np.round(zs.real)
    sign = np.where(r % 2 == 0, 1.0, -1.0)
    out[~big] = np.log(sign * np.sin(np.pi * (zs - r)))
    zb = z[big]
    # sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i); |e^{2 i pi z}| < e^{-60 pi}
    out[big] = -1j * np.pi * zb + np.log((np.exp(2j * np.pi * zb) - 1.0) / 2j)
    return out


def gamma_complex(z):
    """Gamma function for complex (or real) ``z``; scalars or arrays.

    Lanczos approximation on Re z >= 1/2 and the reflection formula below,
    both carried out on the logarithm so that |Im z| up to a few hundred
    neither overflows nor underflows prematurely.  Raises :class:`PoleError`
    at non-positive integers.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)):
        raise DomainError("gamma_complex needs finite input")
    poles = (arr.imag == 0) & (arr.real <= 0) & (arr.real == np.round(arr.real))
    if np.any(poles):
        raise PoleError(f"Gamma has a pole at {arr[poles][0].real:g}")
    # Gamma(conj z) = conj Gamma(z): work in the upper half plane
    flip = arr.imag < 0
    w = np.where(flip, np.conj(arr), arr)
    out = np.empty(w.shape, dtype=complex)
    right = w.real >= 0.5
    if np.any(right):
        out[right] = np.exp(_log_gamma_right(w[right]))
    if np.any(~right):
        wl = w[~right]
        log_g = math.log(math.pi) - _log_sin_pi(wl) - _log_gamma_right(1.0 - wl)
        out[~right] = np.exp(log_g)
    out = np.where(flip, np.conj(out), out)
    return complex(out[0]) if scalar else out


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series sum_j coeffs[j] * z**j about ``center``.

    For Gamma expansions ``coeffs[0] == Gamma(center)``; for the log-Gamma
    expansion at 1 it is ``log Gamma(1) == 0``.
    """

    center: float
    coeffs: tuple

    def __call__(self, z):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivatives(self):
        """k-th derivatives at the center, k = 0..len-1."""
        return [math.factorial(k) * c for k, c in enumerate(self.coeffs)]


def exp_series(coeffs):
    """Coefficients of exp(A(z)) given those of A(z), same truncation."""
    a = list(coeffs)
    b = [math.exp(a[0])]
    for n in range(1, len(a)):
        b.append(math.fsum(k * a[k] * b[n - k] for k in range(1, n + 1)) / n)
    return b


def log_gamma_series_at_1(k_max):
    """Coefficients of log Gamma(1+z) up to z**k_max (k_max <= 30)."""
    if not 1 <= k_max <= 30:
        raise DomainError(f"k_max must be in [1, 30], got {k_max}")
    coeffs = [0.0, -EULER_GAMMA]
    for j in range(2, k_max + 1):
        coeffs.append((-1) ** j * ZETA_INT[j] / j)
    return PowerSeries(1.0, tuple(coeffs))


def _log_gamma_coeffs_at_2(k_max):
    # log Gamma(2+z) = log(1+z) + log Gamma(1+z): the pole at z = -1 drops out,
    # leaving (1-gamma) z + sum_{j>=2} (-1)^j (zeta(j)-1) z^j / j
    coeffs = [0.0, 1.0 - EULER_GAMMA]
    for j in range(2, k_max + 1):
        coeffs.append((-1) ** j * zeta_minus_one(j) / j)
    return coeffs


def gamma_series(center, k_max):
    """Taylor coefficients of Gamma(center + z), center in {1, 2}.

    Mathematically the center-2 series is (1 + z) times the center-1 series;
    it is computed from log Gamma(2 + z) instead because forming the product
    cancels the large pole contribution of Gamma(1 + z) and loses digits.
    """
    if center not in (1, 2):
        raise DomainError(f"center must be 1 or 2, got {center}")
    if not 0 <= k_max <= 30:
        raise DomainError(f"k_max must be in [0, 30], got {k_max}")
    if center == 1:
        coeffs = exp_series(log_gamma_series_at_1(max(k_max, 1)).coeffs)
    else:
        coeffs = exp_series(_log_gamma_coeffs_at_2(max(k_max, 1)))
    return PowerSeries(float(center), tuple(coeffs[: k_max + 1]))


def gamma_derivatives(center, k_max):
    """[Gamma^{(k)}(center) for k = 0..k_max], center in {1, 2}, k_max <= 20."""
    if not 0 <= k_max <= 20:
        raise DomainError(f"k_max must be in [0, 20], got {k_max}")
    return gamma_series(center, k_max).derivatives()
