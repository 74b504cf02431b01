"""Point-split vacuum energies and two-point functions on a circle of radius R.

For the integer families the damped energy density

    (2 pi R)^{-1} sum_n (n/R) exp(-eps n/R)

has a closed form for all integers, 1 / (2 pi R^2 (e^{eps/2R} - e^{-eps/2R})^2),
and after subtracting the flat-space divergence c / (2 pi eps^2) leaves a
finite 1/R^2 term.  For prime modes the divergence is not a pure power of
eps and no such subtraction exists; prime_energy_report exhibits this.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from primefield.abel import damped_energy_sum, g_abel, mode_sum_complex
from primefield.asymptotics import F_of_a, decay_exponent
from primefield.errors import DomainError, UnsupportedModesError
from primefield.modes import ModeSet

_EPS = np.finfo(float).eps

# flat-space counterterm c / (2 pi eps^2): the density of modes per unit n
COUNTERTERM_WEIGHT = {ModeSet.ALL: Fraction(1), ModeSet.EVEN: Fraction(1, 2),
                      ModeSet.ODD: Fraction(1, 2)}

# Ramanujan sums of n over each family: zeta(-1), 2 zeta(-1), (1 - 2) zeta(-1)
ZETA_MINUS_ONE = Fraction(-1, 12)
RAMANUJAN_SUM = {ModeSet.ALL: ZETA_MINUS_ONE, ModeSet.EVEN: 2 * ZETA_MINUS_ONE,
                 ModeSet.ODD: (1 - 2) * ZETA_MINUS_ONE}


def _integer_modes(modes):
    modes = ModeSet.parse(modes)
    if modes.is_prime_family:
        raise UnsupportedModesError(
            f"{modes.name} has no power-law counterterm; use prime_energy_report")
    return modes


def _check_positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive, got {v}")


def closed_form_energy(eps, R):
    """1 / (2 pi R^2 (e^{eps/2R} - e^{-eps/2R})^2), written with sinh."""
    eps, R = float(eps), float(R)
    _check_positive(eps=eps, R=R)
    s = 2.0 * math.sinh(eps / (2.0 * R))
    return 1.0 / (2.0 * math.pi * R * R * s * s)


@dataclass(frozen=True)
class EnergyDensityReport:
    modes: ModeSet
    R: float
    eps: float
    raw: float
    counterterm: float
    renormalized: float


def renormalized_energy(modes, R, eps):
    """Damped mode sum minus the flat-space counterterm c / (2 pi eps^2).

    c = 1 for all integers and 1/2 for the even or odd restriction.
    Requires eps / R <= 1e-2.
    """
    modes = _integer_modes(modes)
    R, eps = float(R), float(eps)
    _check_positive(eps=eps, R=R)
    if eps / R > 1e-2:
        raise DomainError(f"eps/R must be <= 1e-2, got {eps / R}")
    raw = damped_energy_sum(modes, eps, R)
    counter = float(COUNTERTERM_WEIGHT[modes]) / (2.0 * math.pi * eps * eps)
    return EnergyDensityReport(modes, R, eps, raw, counter, raw - counter)


@dataclass(frozen=True)
class RegularizedDensity:
    """Zeta-regularised vacuum energy density over_pi / (pi R^2).

    ``ramanujan_sum`` is the regularised sum of n over the family and
    ``over_pi = ramanujan_sum / 2``, both exact.
    """

    modes: ModeSet
    ramanujan_sum: Fraction
    over_pi: Fraction

    @property
    def value(self):
        """Coefficient of 1/R^2 as a float."""
        return float(self.over_pi) / math.pi

    def at(self, R):
        return self.value / (R * R)


def zeta_regularized_density(modes):
    """(2 pi R)^{-1} * (1/R) * regularised sum of n, as a multiple of 1/(pi R^2)."""
    modes = _integer_modes(modes)
    s = RAMANUJAN_SUM[modes]
    return RegularizedDensity(modes, s, s / 2)


def eps_squared_coefficient(modes):
    """Exact d/d(eps^2) of the renormalised density at R = 1, times pi.

    From sum_n n e^{-a n} = 1/a^2 - 1/12 + a^2/240 + O(a^4) and the
    reindexings for the even and odd families.
    """
    modes = _integer_modes(modes)
    base = Fraction(1, 480)  # (1/2 pi) * 1/240, in units of 1/pi
    return {ModeSet.ALL: base, ModeSet.EVEN: 8 * base, ModeSet.ODD: base - 8 * base}[modes]


@dataclass(frozen=True)
class PrimeEnergyRow:
    eps: float
    raw: float
    counterterm: float
    difference: float
    scaled_residual: float


@dataclass(frozen=True)
class PrimeEnergyReport:
    """Prime-mode energy against the candidate counterterm -F(eps/R)/(4 pi R^2).

    ``growth`` is |difference| at the smallest eps over |difference| at the
    largest; ``exponent`` is the fitted decay of scaled_residual in eps/R.
    """

    modes: ModeSet
    R: float
    rows: tuple
    growth: float
    exponent: float

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def prime_energy_report(R, eps_grid, modes=ModeSet.PRIMES_P, tol=1e-10):
    """Raw prime energy -g(a)/(4 pi R^2), a = eps/R, against -F(a)/(4 pi R^2).

    For the odd primes with 1 the constant 1/(4 pi R^2) is added to the
    counterterm, the a -> 0 limit of the shift between the two families.
    ``scaled_residual`` = 4 pi R^2 a^2 (raw - counterterm) = -a^2 (g - F).
    """
    modes = ModeSet.parse(modes)
    if not modes.is_prime_family:
        raise UnsupportedModesError(f"expected a prime mode set, got {modes.name}")
    R = float(R)
    _check_positive(R=R)
    rows = []
    norm = 4.0 * math.pi * R * R
    for eps in sorted((float(e) for e in eps_grid), reverse=True):
        _check_positive(eps=eps)
        a = eps / R
        raw = -g_abel(a, modes).value / norm
        counter = -F_of_a(a, tol) / norm
        if modes is ModeSet.PRIMES_P_PRIME:
            counter += 1.0 / norm
        diff = raw - counter
        rows.append(PrimeEnergyRow(eps, raw, counter, diff, norm * a * a * diff))
    growth = abs(rows[-1].difference) / abs(rows[0].difference) if rows else math.nan
    exponent = decay_exponent([r.eps / R for r in rows], [r.scaled_residual for r in rows])
    return PrimeEnergyReport(modes, R, tuple(rows), growth, exponent)


@dataclass(frozen=True)
class TwoPointSample:
    """Truncated mode sum and closed form of the chiral two-point function.

    ``bound`` covers the omitted tail n > n_max plus floating-point rounding
    of both sides.
    """

    du: float
    dv: float
    eps: float
    R: float
    n_max: int
    mode_sum: complex
    closed_form: complex
    bound: float


def _one_minus_exp(w):
    """1 - e^{-w} for complex w, accurate when e^{-w} is close to 1."""
    x = -w.real
    y = math.remainder(-w.imag, 2.0 * math.pi)
    s = math.sin(0.5 * y)
    # expm1(x + iy) = expm1(x) cos y - 2 sin^2(y/2) + i e^x sin y
    em1 = complex(math.expm1(x) * math.cos(y) - 2.0 * s * s, math.exp(x) * math.sin(y))
    return -em1


def two_point_scalar(du, dv, eps, R, n_max):
    """Mode sum (1/4pi) sum_{n<=n_max} (q_u^n + q_v^n)/n with q = e^{-i(d - i eps)/R},
    against the closed form -(1/4pi) [log(1 - q_u) + log(1 - q_v)]."""
    du, dv, eps, R = float(du), float(dv), float(eps), float(R)
    n_max = int(n_max)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    _check_positive(R=R)
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    a = eps / R
    n = np.arange(1, n_max + 1, dtype=float)
    damp = np.exp(-a * n) / n
    terms = []
    for d in (du, dv):
        phase = n * (d / R)
        terms.append(damp * np.cos(phase))
        terms.append(-damp * np.sin(phase))
    re = math.fsum(np.concatenate(terms[0::2]))
    im = math.fsum(np.concatenate(terms[1::2]))
    mode_sum = complex(re, im) / (4.0 * math.pi)

    closed = 0j
    rounding = 0.0
    x = math.exp(-a)
    one_minus_x = -math.expm1(-a)
    log_sum = -math.log(one_minus_x)  # sum x^n / n
    for d in (du, dv):
        omq = _one_minus_exp(complex(a, d / R))
        lg = complex(math.log(abs(omq)), math.atan2(omq.imag, omq.real))
        closed -= lg
        reduce_err = 4.0 * _EPS * (abs(d) / R + 1.0) / abs(omq)
        sum_err = 4.0 * _EPS * (log_sum + abs(d) / R * x / one_minus_x) + n_max * _EPS * _EPS
        rounding += reduce_err + 4.0 * _EPS * abs(lg) + sum_err
    closed /= 4.0 * math.pi
    tail = 2.0 * math.exp(-a * (n_max + 1)) / ((n_max + 1) * one_minus_x)
    bound = float(tail + rounding) / (4.0 * math.pi)
    return TwoPointSample(du, dv, eps, R, n_max, mode_sum, closed, bound)


def two_point_prime(d, eps, R, tol=1e-13):
    """(1/2 pi R) sum_{p in P'} exp(-p (eps + i d)/R); d = (t - t') - (x - x')."""
    d, eps, R = float(d), float(eps), float(R)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    _check_positive(R=R)
    z = complex(eps, d) / R
    return mode_sum_complex(z, ModeSet.PRIMES_P_PRIME, tol).value / (2.0 * math.pi * R)
