import math

import mpmath
import numpy as np
import pytest

from primefield.abel import f_abel, g_abel
from primefield.asymptotics import (
    F_of_a,
    SeriesKind,
    decay_exponent,
    f_integral_form,
    f_log_series,
    f_series,
    g_log_series,
    g_series,
    i1_bracket,
    oscillatory_I1,
    residual_report,
)
from primefield.errors import DomainError
from primefield.primes import mertens_constant
from primefield.special import EULER_GAMMA, gamma_derivatives, zeta_real

G = EULER_GAMMA


def mp_i1(a):
    mpmath.mp.dps = 25
    L = -math.log(a)
    f = lambda t: mpmath.im(mpmath.exp(-1j * t * L) * (mpmath.gamma(-1j * t) - 1j * mpmath.exp(-t) / t))
    return float(mpmath.quadosc(f, [0, mpmath.inf], omega=L))


def mp_F(a):
    mpmath.mp.dps = 25
    L = -math.log(a)
    f = lambda t: mpmath.im(mpmath.exp(-1j * t * L) * mpmath.gamma(2 - 1j * t))
    return -float(mpmath.quadosc(f, [0, mpmath.inf], omega=L)) / a ** 2


def test_first_three_f_coefficients():
    c = f_series(3).coefficients
    z3 = zeta_real(3)
    assert c[1] == pytest.approx(-G, rel=1e-12)
    assert c[2] == pytest.approx(-(math.pi ** 2 + 6 * G ** 2) / 12, rel=1e-12)
    assert c[3] == pytest.approx(-(4 * z3 + G * math.pi ** 2 + 2 * G ** 3) / 6, rel=1e-12)


def test_series_coefficient_definitions():
    s = f_series(8)
    d1 = gamma_derivatives(1, 8)
    assert s.kind is SeriesKind.F_SERIES
    for k in range(1, 9):
        assert s.coefficients[k] == -(-1) ** k * d1[k] / k
    t = g_series(8)
    d2 = gamma_derivatives(2, 8)
    assert t.kind is SeriesKind.G_SERIES
    assert t.coefficients == tuple((-1) ** k * d2[k] for k in range(9))
    assert s.B1 == mertens_constant()


def test_f_log_series_values():
    a = 1e-6
    L = -math.log(a)
    assert f_log_series(a, 0) == pytest.approx(math.log(L) + mertens_constant(), rel=1e-15)
    assert f_log_series(a, 0) == pytest.approx(2.887289, abs=1e-6)
    assert f_log_series(a, 1) - f_log_series(a, 0) == pytest.approx(-G / L, rel=1e-14)
    assert -G / L == pytest.approx(-0.04178, abs=1e-5)


def test_f_log_series_domain():
    with pytest.raises(DomainError):
        f_log_series(0.5, 3)
    with pytest.raises(DomainError):
        f_log_series(1e-3, 13)
    with pytest.raises(DomainError):
        g_log_series(0.4, 1)


def test_series_approaches_integral_form():
    a = 1e-3
    target = f_integral_form(a)
    gaps = [abs(f_log_series(a, k) - target) for k in range(6)]
    assert all(x > y for x, y in zip(gaps, gaps[1:]))


def test_series_residual_against_exact_sum_for_low_orders():
    a = 1e-3
    exact = f_abel(a).value
    res = [abs(exact - f_log_series(a, k)) for k in range(3)]
    assert res[0] > res[1] > res[2]


@pytest.mark.parametrize("a", [0.5, 1e-2, 1e-4, 1e-7])
def test_i1_against_mpmath(a):
    val, err = oscillatory_I1(a, 1e-11, full_output=True)
    assert err < 1e-11
    assert val == pytest.approx(mp_i1(a), abs=1e-11)


@pytest.mark.parametrize("a", [0.5, 1e-2, 1e-4])
def test_F_against_mpmath(a):
    val, err = F_of_a(a, 1e-11, full_output=True)
    assert err < 1e-11 / a ** 2
    assert val == pytest.approx(mp_F(a), abs=2e-11 / a ** 2)


def test_bracket_near_zero():
    b = i1_bracket(np.array([0.0, 0.3 - 1e-12, 0.3, 1e-3]))
    assert b[0] == pytest.approx(-G + 1j, abs=1e-15)
    assert abs(b[1] - b[2]) < 1e-10
    mpmath.mp.dps = 30
    t = 1e-3
    ref = complex(mpmath.gamma(-1j * t) - 1j * mpmath.exp(-t) / t)
    assert abs(b[3] - ref) < 1e-13


def test_bracket_series_matches_direct_formula_on_overlap():
    t = np.linspace(0.05, 0.299, 50)
    mpmath.mp.dps = 30
    ref = np.array([complex(mpmath.gamma(-1j * x) - 1j * mpmath.exp(-x) / x) for x in t])
    assert np.max(np.abs(i1_bracket(t) - ref)) < 1e-13


@pytest.mark.parametrize("a", [1e-2, 1e-4])
def test_quadrature_convergence_under_panel_halving(a):
    v1, e1 = oscillatory_I1(a, 1e-10, full_output=True)
    v2, _ = oscillatory_I1(a, 1e-10, full_output=True, subdivide=2)
    assert abs(v1 - v2) <= max(e1, 1e-15)
    F1, E1 = F_of_a(a, 1e-10, full_output=True)
    F2, _ = F_of_a(a, 1e-10, full_output=True, subdivide=2)
    assert abs(F1 - F2) <= E1


def test_i1_integration_by_parts_order():
    c = f_series(4).coefficients
    Ls, res = [], []
    for a in (1e-10, 1e-20, 1e-40, 1e-80):
        L = -math.log(a)
        # I1 = 1/2 log(1 + 1/L^2) - sum c_k / L^k
        series = -c[1] / L + (0.5 - c[2]) / L ** 2 - c[3] / L ** 3 + (-0.25 - c[4]) / L ** 4
        Ls.append(L)
        res.append(abs(oscillatory_I1(a, 1e-13) - series))
    slope = np.polyfit(np.log(Ls), np.log(res), 1)[0]
    assert slope < -4.5


def test_leading_forms_merge():
    for L in (10.0, 100.0, 1e4):
        assert 0.5 * math.log1p(L * L) - math.log(L) < 1 / L ** 2


def test_integral_form_matches_long_series():
    diffs = [abs(f_integral_form(a) - f_log_series(a, 8)) for a in (1e-4, 1e-6, 1e-10)]
    assert diffs[0] < 1e-3
    assert diffs[0] > diffs[1] > diffs[2]


def test_integral_form_decay_at_half():
    a = 0.5
    assert abs(f_integral_form(a) - f_abel(a).value) < 2 * a ** 0.45


def test_F_leading_band():
    a = 1e-4
    assert 0.8 <= F_of_a(a) * a * a * -math.log(a) <= 1.2


def test_F_series_agreement_improves():
    rel = []
    for a in (1e-2, 1e-4, 1e-8, 1e-16):
        rel.append(abs(g_log_series(a, 4) / F_of_a(a) - 1))
    assert all(x > y for x, y in zip(rel, rel[1:]))


def test_residual_report_f():
    rep = residual_report("f", [1e-2, 1e-3, 1e-4, 1e-5, 1e-6], k_max=5)
    assert [r.a for r in rep] == sorted([1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    assert rep.exponent >= 0.4
    for r in rep.rows + rep.series_rows:
        assert r.residual == r.exact - r.approx
        assert r.normalized_residual == pytest.approx(r.residual / r.a ** 0.45)


def test_residual_report_g():
    rep = residual_report("g", [1e-2, 1e-3, 1e-4], k_max=4, threads=3)
    assert rep.exponent >= 0.4
    for r in rep:
        assert r.normalized_residual == pytest.approx(r.residual * r.a ** 1.55)


def test_residual_report_threads_are_deterministic():
    grid = [1e-1, 1e-2, 1e-3]
    a = residual_report("f", grid, threads=1)
    b = residual_report("f", grid, threads=3)
    assert a == b


def test_residual_report_stable_under_tighter_tol():
    grid = [1e-2, 1e-3, 1e-4, 1e-5]
    a = residual_report("f", grid, tol=1e-8).exponent
    b = residual_report("f", grid, tol=1e-12).exponent
    assert a == pytest.approx(b, abs=1e-6)


def test_residual_report_empty():
    rep = residual_report("f", [])
    assert len(rep) == 0
    assert list(rep) == []
    assert math.isnan(rep.exponent)


def test_residual_report_bad_kind():
    with pytest.raises(DomainError):
        residual_report("h", [0.1])


def test_decay_exponent_exact_power():
    a = np.geomspace(1e-6, 1e-1, 6)
    assert decay_exponent(a, 3 * a ** 0.7) == pytest.approx(0.7)
    assert decay_exponent(a, a ** -1.5, scale_power=2.0) == pytest.approx(0.5)
