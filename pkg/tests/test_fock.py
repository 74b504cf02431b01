import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primefield.errors import CutoffError, DomainError
from primefield.fock import (
    I,
    BilinearOperator,
    ExactComplex,
    FockVector,
    apply_bilinear,
    apply_mode,
    build_composite,
    central_term,
    enumerate_prime_states,
    normalization_factor,
    symmetrized_state,
)
from primefield.modes import ModeSet
from primefield.primes import goldbach_partitions

ALL_MODES = list(ModeSet)


def basis(occ=0, one=(), two=()):
    return (occ, tuple(one), tuple(two))


def random_vector(rng, size=4, max_mode=6, zero=True):
    amps = {}
    for _ in range(size):
        one = tuple(sorted(rng.choice(np.arange(1, max_mode + 1), size=rng.integers(0, 3), replace=False).tolist()))
        two = tuple(sorted(rng.choice(np.arange(1, max_mode + 1), size=rng.integers(0, 3), replace=False).tolist()))
        occ = int(rng.integers(0, 2)) if zero else 0
        amps[(occ, one, two)] = ExactComplex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
    return FockVector(2, amps)


def test_exact_complex_arithmetic():
    a = ExactComplex(1, 2)
    b = ExactComplex(Fraction(1, 2), -1)
    assert a * b == ExactComplex(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert I * I == -1
    assert complex(a - b) == complex(0.5, 3)
    assert a.conjugate() == ExactComplex(1, -2)


def test_single_term_creation():
    op = BilinearOperator(((-3, -5, ExactComplex(1)),))
    v = apply_bilinear(op, FockVector.vacuum(), cutoff=5)
    assert v.amps == {basis(0, (3,), (5,)): ExactComplex(1)}


def test_annihilators_kill_vacuum():
    vac = FockVector.vacuum()
    for r in (1, 2, 7):
        assert len(apply_mode(1, r, vac)) == 0
        assert len(apply_mode(2, r, vac)) == 0
    op = BilinearOperator(((3, 5, I),))
    assert len(apply_bilinear(op, vac, 5)) == 0


def test_pauli_exclusion():
    v = apply_mode(1, -3, FockVector.vacuum())
    assert len(apply_mode(1, -3, v)) == 0


def test_cutoff_rejected():
    op = BilinearOperator(((-7, 1, I),))
    with pytest.raises(CutoffError):
        apply_bilinear(op, FockVector.vacuum(), cutoff=5)


@pytest.mark.parametrize("seed", range(10))
def test_anticommutators_on_random_states(seed):
    rng = np.random.default_rng(seed)
    v = random_vector(rng)
    for i, j in itertools.product((1, 2), repeat=2):
        for r in range(-4, 5):
            for s in range(-4, 5):
                lhs = apply_mode(i, r, apply_mode(j, s, v)) + apply_mode(j, s, apply_mode(i, r, v))
                expected = v.scale(Fraction(int(i == j and r == -s)))
                if r == 0 and s == 0 and i == j:
                    expected = v.scale(1)  # {b_0, b_0} = 2 b_0^2 = 1
                assert lhs == expected


def test_zero_mode_squares_to_half():
    v = FockVector.vacuum()
    for species in (1, 2):
        w = apply_mode(species, 0, apply_mode(species, 0, v))
        assert w == v.scale(Fraction(1, 2))


def test_zero_mode_norms():
    v = apply_mode(1, 0, FockVector.vacuum())
    # b_0 |0> has norm^2 <0|b_0 b_0|0> = 1/2
    assert v.vdot(v) == Fraction(1, 2)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(-3, 3), st.integers(-3, 3))
def test_linearity_random(seed, x, y):
    rng = np.random.default_rng(seed)
    u, v = random_vector(rng, 3, 5), random_vector(rng, 3, 5)
    op = build_composite(2, ModeSet.ALL, 5)
    lhs = apply_bilinear(op, u.scale(x) + v.scale(y), 5)
    rhs = apply_bilinear(op, u, 5).scale(x) + apply_bilinear(op, v, 5).scale(y)
    assert lhs == rhs


def test_composite_examples():
    odd = build_composite(2, ModeSet.ODD, 5)
    assert [t[0] for t in odd.terms] == [-3, -1, 1, 3, 5]
    assert [t[1] for t in odd.terms] == [5, 3, 1, -1, -3]
    assert len(odd) == 5
    p = build_composite(2, ModeSet.PRIMES_P_PRIME, 3)
    assert [(r, s) for r, s, _ in p.terms] == [(-1, 3), (1, 1), (3, -1)]
    assert all(c == I for _, _, c in p.terms)


def test_composite_literal_sign():
    assert all(c == -I for _, _, c in build_composite(-2, ModeSet.ODD, 5, convention="literal").terms)
    assert all(c == I for _, _, c in build_composite(-2, ModeSet.ODD, 5).terms)


def test_composite_grows_linearly():
    counts = [len(build_composite(4, ModeSet.ODD, c)) for c in (10, 20, 40, 80)]
    diffs = np.diff(counts)
    assert np.all(diffs == diffs[0] * np.array([1, 2, 4]))


def test_composite_domain():
    with pytest.raises(DomainError):
        build_composite(3, ModeSet.ODD, 10)
    with pytest.raises(DomainError):
        build_composite(0, ModeSet.ALL, 10)
    with pytest.raises(DomainError):
        build_composite(2, ModeSet.ALL, 10, convention="other")
    assert len(build_composite(3, ModeSet.ALL, 5)) > 0


@pytest.mark.parametrize("modes", ALL_MODES)
def test_hermitian_convention_adjoint(modes):
    for n in (2, 4, 6):
        a = build_composite(n, modes, 12)
        b = build_composite(-n, modes, 12)
        assert sorted(a.adjoint().terms, key=lambda t: t[0]) == sorted(b.terms, key=lambda t: t[0])


def test_central_term_examples():
    assert central_term(2, 2, ModeSet.ALL).normalized == 1
    assert central_term(4, 4, ModeSet.ODD).normalized == Fraction(1, 2)
    r = central_term(8, 8, ModeSet.PRIMES_P_PRIME)
    assert r.raw == 4 and r.normalized == Fraction(1, 2)
    for modes in ALL_MODES:
        assert central_term(2, 4, modes).raw == 0


@pytest.mark.parametrize("n", range(2, 21, 2))
def test_integer_and_odd_normalized(n):
    assert central_term(n, n, ModeSet.ALL).normalized == 1
    assert central_term(n, n, ModeSet.ODD).normalized == Fraction(1, 2)
    assert central_term(n, n, ModeSet.EVEN).normalized == Fraction(1, 2)


@pytest.mark.parametrize("n", range(1, 12))
def test_integer_family_odd_index(n):
    assert central_term(n, n, ModeSet.ALL).normalized == 1


@pytest.mark.parametrize("modes", [ModeSet.PRIMES_P, ModeSet.PRIMES_P_PRIME])
@pytest.mark.parametrize("n", range(2, 41, 2))
def test_prime_central_term_is_ordered_goldbach_count(modes, n):
    r = central_term(n, n, modes)
    assert r.raw == goldbach_partitions(n, modes).ordered
    assert r.raw_imag == 0


def test_literal_convention_flips_sign():
    for modes in (ModeSet.ODD, ModeSet.PRIMES_P_PRIME):
        h = central_term(8, 8, modes)
        lit = central_term(8, 8, modes, convention="literal")
        assert lit.raw == -h.raw


def test_without_zero_modes_integers_miss_one():
    for n in (2, 4, 10):
        r = central_term(n, n, ModeSet.ALL, zero_modes=False)
        assert r.raw == n - 1


@pytest.mark.parametrize("modes", ALL_MODES)
def test_off_diagonal_vanishes(modes):
    for n in range(2, 13, 2):
        for m in range(2, 13, 2):
            if n != m:
                assert central_term(n, m, modes).raw == 0
                assert central_term(n, m, modes).raw_imag == 0


@pytest.mark.parametrize("modes", ALL_MODES)
def test_cutoff_stability(modes):
    for n in range(2, 21, 6):
        for m in (n, n + 2):
            w = n + m
            assert central_term(n, m, modes, w).raw == central_term(n, m, modes, w + 10).raw


def test_cutoff_below_window():
    with pytest.raises(CutoffError):
        central_term(4, 4, ModeSet.ODD, cutoff=7)


def test_enumerate_prime_states():
    assert enumerate_prime_states(10, 2) == [(3, 7), (5, 5)]
    assert enumerate_prime_states(9, 3) == [(2, 2, 5), (3, 3, 3)]
    assert enumerate_prime_states(3, 2) == []


@pytest.mark.parametrize("modes", [ModeSet.PRIMES_P, ModeSet.PRIMES_P_PRIME])
def test_two_part_states_match_goldbach(modes):
    for n in range(2, 200, 2):
        assert len(enumerate_prime_states(n, 2, modes)) == goldbach_partitions(n, modes).unordered


def test_enumerate_brute_force():
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    for n in range(2, 30):
        expected = sorted({tuple(sorted(c)) for c in itertools.product(primes, repeat=3) if sum(c) == n})
        assert enumerate_prime_states(n, 3) == expected


def test_normalization_examples():
    assert normalization_factor((3, 7)) == 1
    assert normalization_factor((5, 5)) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert normalization_factor((3, 3, 3)) == pytest.approx(1 / math.sqrt(6), rel=1e-15)


@pytest.mark.parametrize("state", [(3, 7), (5, 5), (3, 3, 3), (2, 2, 5), (1, 3, 5), (3, 3, 5, 5)])
def test_normalization_by_inner_product(state):
    v = symmetrized_state(state)
    norm2 = v.vdot(v)
    k = len(state)
    assert norm2.im == 0
    # N^2 * |v|^2 / k! == 1
    assert float(norm2.re) / math.factorial(k) * normalization_factor(state) ** 2 == pytest.approx(1, rel=1e-15)


def test_two_species_prime_state():
    # b^1_{-p} b^2_{-q} |0> with distinct species is normalized already
    v = apply_mode(1, -5, apply_mode(2, -5, FockVector.vacuum()))
    assert v.vdot(v) == 1
