import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primefield.abel import (
    MAX_CUTOFF,
    damped_energy_sum,
    f_abel,
    find_cutoff,
    g_abel,
    mode_sum,
    mode_sum_complex,
    tail_bound,
)
from primefield.errors import CapacityError, DomainError
from primefield.modes import ModeSet
from primefield.primes import mertens_constant, sieve
from primefield.special import EULER_GAMMA

PRIMES_1000 = sieve(1000).primes.tolist()


def brute(a, power, members):
    mpmath.mp.dps = 30
    return float(mpmath.fsum(mpmath.mpf(p) ** power * mpmath.exp(-a * p) for p in members))


def test_f_g_at_one_brute_force(backend):
    assert f_abel(1).value == pytest.approx(brute(1, -1, PRIMES_1000), rel=1e-14)
    assert f_abel(1).value == pytest.approx(0.0857429, abs=1e-7)
    assert g_abel(1).value == pytest.approx(brute(1, 1, PRIMES_1000), rel=1e-14)
    assert g_abel(1).value == pytest.approx(0.4603186, abs=1e-7)
    z = mode_sum_complex(1)
    assert z.value.real == pytest.approx(brute(1, 0, PRIMES_1000), rel=1e-14)
    assert z.value.imag == 0.0


def test_primes_prime_family_brute_force(backend):
    members = [1] + PRIMES_1000[1:]
    for a in (0.05, 0.3, 1.0):
        assert f_abel(a, ModeSet.PRIMES_P_PRIME).value == pytest.approx(brute(a, -1, members), rel=1e-13)
        assert g_abel(a, ModeSet.PRIMES_P_PRIME).value == pytest.approx(brute(a, 1, members), rel=1e-13)


def test_large_damping():
    assert 0 < f_abel(50).value < 1e-40
    assert g_abel(50).value == pytest.approx(2 * math.exp(-100), rel=1e-12)


def test_f_matches_leading_asymptote_at_1e4(backend):
    a = 1e-4
    L = -math.log(a)
    from primefield.special import gamma_derivatives
    d = gamma_derivatives(1, 5)
    series = math.log(L) + mertens_constant() - sum(
        (-1) ** k * d[k] / k / L ** k for k in range(1, 6))
    assert abs(f_abel(a).value - series) < 3e-3


def test_tail_bounds_dominate_integer_tails():
    for power in (-1, 0, 1):
        for a in (1e-3, 0.1, 1.0, 3.0):
            for n in (2, 10, 1000):
                k = np.arange(n + 1, n + 1 + int(80 / a) + 10, dtype=float)
                exact = math.fsum(k ** power * np.exp(-a * k))
                assert exact <= tail_bound(power, a, n)
                assert tail_bound(power, a, n) <= exact * (1 + 1e-9) + 1e-300 or power == -1


def test_find_cutoff_is_minimal():
    for power in (-1, 0, 1):
        for a, tol in ((1e-3, 1e-13), (0.5, 1e-10), (1e-5, 1e-6)):
            n = find_cutoff(power, a, tol)
            assert tail_bound(power, a, n) <= tol
            assert n == 2 or tail_bound(power, a, n - 1) > tol


def test_capacity_error():
    with pytest.raises(CapacityError) as info:
        find_cutoff(1, 1e-8, 1e-13, max_cutoff=10 ** 6)
    assert info.value.best_bound > 1e-13
    assert info.value.cutoff == 10 ** 6


def test_domain_errors():
    with pytest.raises(DomainError):
        f_abel(1e-9)
    with pytest.raises(DomainError):
        f_abel(0.1, tol=1e-14)
    with pytest.raises(DomainError):
        f_abel(0.1, ModeSet.ODD)
    with pytest.raises(DomainError):
        damped_energy_sum(ModeSet.ALL, 0.0, 1.0)
    with pytest.raises(DomainError):
        mode_sum_complex(-0.1 + 1j)


@settings(max_examples=20, deadline=None)
@given(st.floats(1e-4, 2.0), st.floats(1e-13, 1e-6), st.sampled_from([-1, 1]))
def test_tail_certification(a, tol, power):
    r = mode_sum(ModeSet.PRIMES_P, a, power, tol)
    r2 = mode_sum(ModeSet.PRIMES_P, a, power, cutoff=2 * r.cutoff)
    scale = max(1.0, abs(r.value))
    assert r.tail_bound <= tol
    assert 0 <= r2.value - r.value <= r.tail_bound + 4e-16 * scale


def test_monotone_in_a():
    grid = np.geomspace(1e-4, 2.0, 15)
    f = [f_abel(a).value for a in grid]
    g = [g_abel(a).value for a in grid]
    assert np.all(np.diff(f) < 0)
    assert np.all(np.diff(g) < 0)


@pytest.mark.parametrize("a", [0.5, 0.1, 0.01])
def test_derivative_of_f_is_minus_exp_sum(a):
    h = 1e-5 * a
    d = (f_abel(a + h).value - f_abel(a - h).value) / (2 * h)
    assert -d == pytest.approx(mode_sum_complex(a).value.real, rel=1e-6)


@pytest.mark.parametrize("a", [0.5, 0.1, 0.01])
def test_second_difference_of_f_is_g(a):
    h = 1e-3 * a
    d2 = (f_abel(a + h).value - 2 * f_abel(a).value + f_abel(a - h).value) / h ** 2
    assert d2 == pytest.approx(g_abel(a).value, rel=1e-4)


def test_complex_sum_brute_force_and_reflection(backend):
    z = 0.3 + 0.7j
    mpmath.mp.dps = 30
    ref = complex(mpmath.fsum(mpmath.exp(-mpmath.mpc(z) * p) for p in PRIMES_1000))
    v = mode_sum_complex(z).value
    # the phase y*p is rounded before cos/sin, a few ulps of p*y per term
    assert abs(v - ref) < 5e-14
    assert mode_sum_complex(z.conjugate()).value == v.conjugate()


@pytest.mark.parametrize("modes", list(ModeSet))
def test_complex_sum_all_families(modes):
    z = 0.2 - 1.1j
    r = mode_sum_complex(z, modes)
    members = [n for n in range(1, 400) if modes.contains(n, lambda k: k in set(PRIMES_1000))]
    ref = sum(np.exp(-z * np.array(members, dtype=float)))
    assert abs(r.value - ref) < 1e-12


def test_backends_bit_identical_by_construction():
    a = 1e-3
    values = {f_abel(a).value for _ in range(3)}
    assert len(values) == 1


def test_damped_energy_closed_form():
    for eps, R in [(0.1, 1.0), (1e-3, 1.0), (0.05, 2.0), (0.3, 0.7)]:
        x = eps / (2 * R)
        closed = 1.0 / (2 * math.pi * R ** 2 * (math.exp(x) - math.exp(-x)) ** 2)
        assert damped_energy_sum(ModeSet.ALL, eps, R) == pytest.approx(closed, rel=1e-12)


def test_damped_energy_even_reindexing():
    # sum over even n of n e^{-eps n} = 2 sum_m m e^{-2 eps m}
    eps = 0.02
    even = damped_energy_sum(ModeSet.EVEN, eps, 1.0)
    all_2eps = damped_energy_sum(ModeSet.ALL, 2 * eps, 1.0)
    assert even == pytest.approx(2 * all_2eps, rel=1e-13)
    odd = damped_energy_sum(ModeSet.ODD, eps, 1.0)
    assert even + odd == pytest.approx(damped_energy_sum(ModeSet.ALL, eps, 1.0), rel=1e-13)


def test_damped_energy_primes():
    assert damped_energy_sum(ModeSet.PRIMES_P, 1.0, 1.0) == pytest.approx(-g_abel(1).value / (4 * math.pi), rel=1e-15)
    assert damped_energy_sum(ModeSet.PRIMES_P, 1.0, 1.0) == pytest.approx(-0.0366310, abs=1e-7)
