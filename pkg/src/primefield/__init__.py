"""Numerics for quantum fields whose modes are labelled by primes.

Import the submodules directly (``primefield.primes``, ``primefield.abel``,
...); the most used entry points are re-exported here.
"""
from primefield.abel import AbelSumResult, f_abel, g_abel, mode_sum
from primefield.asymptotics import F_of_a, f_integral_form, f_series, g_series, residual_report
from primefield.casimir import prime_energy_report, renormalized_energy, two_point_scalar
from primefield.errors import (
    CapacityError,
    DomainError,
    PrimefieldError,
    QuadratureError,
)
from primefield.fock import central_term
from primefield.kernels import BACKEND
from primefield.modes import ModeSet
from primefield.primes import (
    goldbach_partitions,
    mertens_constant,
    prime_zeta_direct,
    prime_zeta_mobius,
    sieve,
)

__version__ = "0.1.0"
