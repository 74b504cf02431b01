"""Small-a asymptotics of the prime Abel sums.

With L = -log a, the two sums

    f(a) = sum_p exp(-a p) / p,        g(a) = sum_p p exp(-a p)

behave (conditionally on the Riemann hypothesis) like

    f(a) ~ log L + B1 - sum_{k>=1} (-1)^k Gamma^{(k)}(1) / (k L^k)
    f(a) = 1/2 log(1 + L^2) + B1 - I1(a) + o(a^{1/2 - eps})
    g(a) = F(a) + o(a^{-3/2 - eps}),   F(a) ~ a^{-2} sum_{k>=0} (-1)^k Gamma^{(k)}(2) / L^{k+1}

where I1(a) = Im int_0^inf e^{-itL} (Gamma(-it) - i e^{-t}/t) dt and
F(a) = -Im a^{-2} int_0^inf e^{-itL} Gamma(2 - it) dt.  Both integrals are
evaluated by Gauss-Legendre panels one half-period pi/L wide.
"""
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from primefield.abel import MIN_TOL, f_abel, g_abel
from primefield.errors import DomainError, QuadratureError
from primefield.modes import ModeSet
from primefield.primes import mertens_constant
from primefield.special import gamma_complex, gamma_derivatives, gamma_series

_NODES_LO = 24
_NODES_HI = 32
# below this t the bracket in I1 is summed from its Taylor series
_SERIES_T = 0.3
_SERIES_TERMS = 30
_MAX_PANELS = 20_000


class SeriesKind(enum.Enum):
    F_SERIES = "f"
    G_SERIES = "g"


@dataclass(frozen=True)
class AsymptoticSeries:
    """Truncated log-scale expansion of f (F_SERIES) or g (G_SERIES).

    F_SERIES: f(a) ~ log L + B1 + sum_{k=1}^{k_max} c_k / L^k,
              c_k = -(-1)^k Gamma^{(k)}(1) / k.
    G_SERIES: g(a) ~ a^{-2} sum_{k=0}^{k_max} c_k / L^{k+1},
              c_k = (-1)^k Gamma^{(k)}(2).
    ``coefficients[k]`` holds c_k (c_0 = 0 for F_SERIES).
    """

    kind: SeriesKind
    k_max: int
    coefficients: tuple
    B1: float

    def __call__(self, a):
        L = _log_scale(a)
        if self.kind is SeriesKind.F_SERIES:
            terms = [math.log(L), self.B1]
            terms += [c / L ** k for k, c in enumerate(self.coefficients) if k >= 1]
            return math.fsum(terms)
        terms = [c / L ** (k + 1) for k, c in enumerate(self.coefficients)]
        return math.fsum(terms) / (a * a)


def _log_scale(a):
    a = float(a)
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a}")
    return -math.log(a)


def f_series(k_max):
    if not 0 <= k_max <= 12:
        raise DomainError(f"k_max must be in [0, 12], got {k_max}")
    d = gamma_derivatives(1, k_max)
    coeffs = [0.0] + [-(-1) ** k * d[k] / k for k in range(1, k_max + 1)]
    return AsymptoticSeries(SeriesKind.F_SERIES, k_max, tuple(coeffs), mertens_constant())


def g_series(k_max):
    if not 0 <= k_max <= 12:
        raise DomainError(f"k_max must be in [0, 12], got {k_max}")
    d = gamma_derivatives(2, k_max)
    coeffs = [(-1) ** k * d[k] for k in range(k_max + 1)]
    return AsymptoticSeries(SeriesKind.G_SERIES, k_max, tuple(coeffs), mertens_constant())


def f_log_series(a, k_max):
    """log L + B1 - sum_{k=1}^{k_max} (-1)^k Gamma^{(k)}(1) / (k L^k), a < 1/e."""
    if not 0.0 < a < math.exp(-1.0):
        raise DomainError(f"the f series needs 0 < a < 1/e, got {a}")
    return f_series(k_max)(a)


def g_log_series(a, k_max):
    """a^{-2} sum_{k=0}^{k_max} (-1)^k Gamma^{(k)}(2) / L^{k+1}, a < 1/e."""
    if not 0.0 < a < math.exp(-1.0):
        raise DomainError(f"the g series needs 0 < a < 1/e, got {a}")
    return g_series(k_max)(a)


# Taylor coefficients of the I1 bracket about t = 0:
#   Gamma(-it) - i e^{-t}/t = (i/t) (Gamma(1 - it) - e^{-t})
#                           = i sum_{j>=1} (b_j (-i)^j - (-1)^j / j!) t^{j-1}
# with Gamma(1 + z) = sum b_j z^j.  The value at t = 0 is i (1 + i gamma) = -gamma + i.
_B = gamma_series(1, _SERIES_TERMS).coeffs
_BRACKET_TAYLOR = np.array([
    1j * (_B[j] * (-1j) ** j - (-1) ** j / math.factorial(j))
    for j in range(1, _SERIES_TERMS + 1)
])


def i1_bracket(t):
    """Gamma(-it) - i e^{-t}/t for t >= 0, finite at t = 0 (value -gamma + i)."""
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape, dtype=complex)
    small = t < _SERIES_T
    ts = t[small]
    acc = np.zeros(ts.shape, dtype=complex)
    for c in _BRACKET_TAYLOR[::-1]:
        acc = acc * ts + c
    out[small] = acc
    tb = t[~small]
    out[~small] = (1j / tb) * (gamma_complex(1.0 - 1j * tb) - np.exp(-tb))
    return out


def _t_max(tol):
    # |Gamma(2-it)| and |Gamma(-it)| decay like e^{-pi t/2}; the e^{-t}/t piece of
    # the I1 bracket only like e^{-t}, hence the second term
    log_inv = math.log(1.0 / tol)
    return max(40.0, 2.0 * (12.0 + log_inv) / math.pi, log_inv + 10.0)


def _panel_quadrature(integrand, L, t_max, subdivide=1):
    """int_0^t_max integrand(t) dt on panels of width <= pi/L, two node counts."""
    width = min(math.pi / L, 1.0) / subdivide
    panels = int(math.ceil(t_max / width))
    if panels > _MAX_PANELS:
        raise QuadratureError(f"{panels} panels exceed the budget {_MAX_PANELS}", math.inf)
    left = width * np.arange(panels)
    results = []
    mags = 0.0
    for n in (_NODES_LO, _NODES_HI):
        x, w = np.polynomial.legendre.leggauss(n)
        t = (left[:, None] + 0.5 * width * (x + 1.0)[None, :]).ravel()
        vals = integrand(t) * np.tile(0.5 * width * w, panels)
        results.append(complex(math.fsum(vals.real), math.fsum(vals.imag)))
        mags = max(mags, float(np.sum(np.abs(vals))))
    return results[1], abs(results[1] - results[0]), mags


def oscillatory_I1(a, tol=1e-10, full_output=False, subdivide=1):
    """I1(a) = Im int_0^inf e^{it log a} (Gamma(-it) - i e^{-t}/t) dt, 0 < a < 1.

    The error estimate is |Q32 - Q24| on the same panels plus the truncated
    tail beyond t_max plus a rounding floor; with ``full_output`` the pair
    (value, estimate) is returned.  ``subdivide`` splits every panel further.
    """
    L = _log_scale(a)
    t_max = _t_max(tol)
    value, diff, mags = _panel_quadrature(
        lambda t: np.exp(-1j * L * t) * i1_bracket(t), L, t_max, subdivide)
    # tail: |Gamma(-it)| <= sqrt(2 pi / t) e^{-pi t/2} (t >= 1) and e^{-t}/t
    tail = math.exp(-t_max) / t_max + math.sqrt(2 * math.pi / t_max) * math.exp(-math.pi * t_max / 2) * 2 / math.pi
    estimate = diff + tail + 4e-16 * mags
    if estimate > tol:
        raise QuadratureError(f"I1({a:g}) did not reach tol {tol:g}", estimate)
    return (value.imag, estimate) if full_output else value.imag


def f_integral_form(a, tol=1e-10):
    """1/2 log(1 + L^2) + B1 - I1(a)."""
    L = _log_scale(a)
    return 0.5 * math.log1p(L * L) + mertens_constant() - oscillatory_I1(a, tol)


def F_of_a(a, tol=1e-10, full_output=False, subdivide=1):
    """F(a) = -Im a^{-2} int_0^inf e^{it log a} Gamma(2 - it) dt, 0 < a < 1.

    ``tol`` bounds the error of the integral, so F itself is good to tol / a^2.
    """
    L = _log_scale(a)
    t_max = _t_max(tol)
    value, diff, mags = _panel_quadrature(
        lambda t: np.exp(-1j * L * t) * gamma_complex(2.0 - 1j * t), L, t_max, subdivide)
    # |Gamma(2-it)| <= sqrt(2 pi) (1+t)^{3/2} e^{-pi t/2} for t >= 1
    tail = math.sqrt(2 * math.pi) * (1 + t_max) ** 1.5 * math.exp(-math.pi * t_max / 2) * 2 / math.pi * 2
    estimate = diff + tail + 4e-16 * mags
    if estimate > tol:
        raise QuadratureError(f"F({a:g}) did not reach tol {tol:g}", estimate / (a * a))
    F = -value.imag / (a * a)
    return (F, estimate / (a * a)) if full_output else F


@dataclass(frozen=True)
class ResidualRow:
    """exact - approx at one damping value.

    normalized_residual divides out the conjectured decay: residual /
    a^{0.45} for f and residual * a^{1.55} for g.
    """

    a: float
    exact: float
    approx: float
    residual: float
    normalized_residual: float


@dataclass(frozen=True)
class ResidualReport:
    """Residual rows of the integral form and of the log series, with the
    least-squares slopes of log|residual| (times a^2 for g) against log a."""

    kind: str
    k_max: int
    rows: tuple
    series_rows: tuple
    exponent: float
    series_exponent: float

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def decay_exponent(a_values, residuals, scale_power=0.0):
    """Slope of log(|r| a^scale_power) against log a (nan with < 2 points)."""
    a = np.asarray(a_values, dtype=float)
    r = np.abs(np.asarray(residuals, dtype=float)) * a ** scale_power
    if a.size < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(a), np.log(r), 1)
    return float(slope)


def _row(kind, a, exact, approx):
    res = exact - approx
    norm = res / a ** 0.45 if kind == "f" else res * a ** 1.55
    return ResidualRow(a, exact, approx, res, norm)


def residual_report(kind, a_grid, k_max=5, tol=1e-10, threads=1):
    """Compare exact prime Abel sums against both asymptotic forms on a grid.

    kind "f": f_abel vs f_integral_form and vs f_log_series(k_max).
    kind "g": g_abel vs F_of_a and vs the g log series(k_max).
    Rows are sorted by a; independent rows run on ``threads`` workers.
    """
    if kind not in ("f", "g"):
        raise DomainError(f"kind must be 'f' or 'g', got {kind!r}")
    grid = sorted(float(a) for a in a_grid)
    for a in grid:
        _log_scale(a)
    sum_tol = max(MIN_TOL, min(tol, 1e-10))
    series = f_series(k_max) if kind == "f" else g_series(k_max)

    def compute(a):
        if kind == "f":
            return f_abel(a, ModeSet.PRIMES_P, sum_tol).value, f_integral_form(a, tol)
        return g_abel(a, ModeSet.PRIMES_P, sum_tol).value, F_of_a(a, tol)

    if threads > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pairs = list(pool.map(compute, grid))
    else:
        pairs = [compute(a) for a in grid]
    rows = tuple(_row(kind, a, ex, ap) for a, (ex, ap) in zip(grid, pairs))
    series_rows = tuple(_row(kind, a, ex, series(a)) for a, (ex, _) in zip(grid, pairs))
    scale = 2.0 if kind == "g" else 0.0
    return ResidualReport(
        kind, k_max, rows, series_rows,
        decay_exponent(grid, [r.residual for r in rows], scale),
        decay_exponent(grid, [r.residual for r in series_rows], scale),
    )
