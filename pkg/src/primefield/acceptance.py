"""The twelve acceptance checks, each with its tolerance and time budget.

Used by ``primefield report`` and by the test-suite.  A check passes when
its numerical condition holds *and* it finishes within its budget.
"""
import math
import time
from dataclasses import dataclass

import numpy as np

from primefield.abel import damped_energy_sum, f_abel, g_abel
from primefield.asymptotics import f_series, residual_report
from primefield.casimir import (
    closed_form_energy,
    eps_squared_coefficient,
    prime_energy_report,
    renormalized_energy,
    two_point_scalar,
)
from primefield.fock import central_term
from primefield.modes import ModeSet
from primefield.primes import mertens_constant, mobius_tail_bound, prime_zeta_direct, prime_zeta_mobius
from primefield.special import EULER_GAMMA, zeta_real


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.2f}s / {self.budget:g}s)"


def _casimir_values():
    eps = 1e-3
    targets = {ModeSet.ALL: (-1 / (24 * math.pi), 1e-7),
               ModeSet.EVEN: (-1 / (6 * math.pi), 1e-6),
               ModeSet.ODD: (1 / (12 * math.pi), 1e-6)}
    ok, parts = True, []
    for modes, (target, tol) in targets.items():
        got = renormalized_energy(modes, 1.0, eps).renormalized
        err = abs(got - target)
        ok &= err < tol
        parts.append(f"{modes.value}={got:.9f} (target {target:.9f}, err {err:.1e})")
    return ok, "; ".join(parts)


def _closed_form():
    grid = [(eps, R) for eps in (1e-3, 1e-2, 0.1, 0.5, 1.0) for R in (1.0, 2.5)]
    worst = max(abs(damped_energy_sum(ModeSet.ALL, e, R) / closed_form_energy(e, R) - 1) for e, R in grid)
    return worst < 1e-12, f"max relative deviation {worst:.2e} on {len(grid)} points"


def _mertens():
    b1 = mertens_constant(64)
    return abs(b1 - 0.26149721) < 5e-9, f"B1 = {b1:.12f}"


def _coefficients():
    c = f_series(3).coefficients
    g, z3 = EULER_GAMMA, zeta_real(3)
    expected = [-g, -(math.pi ** 2 + 6 * g * g) / 12, -(4 * z3 + g * math.pi ** 2 + 2 * g ** 3) / 6]
    worst = max(abs(c[k + 1] / e - 1) for k, e in enumerate(expected))
    return worst < 1e-12, f"max relative deviation {worst:.2e}"


def _leading_law():
    b1 = mertens_constant()
    grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    gaps = [abs(f_abel(a).value - math.log(-math.log(a)) - b1) for a in grid]
    monotone = all(x > y for x, y in zip(gaps, gaps[1:]))
    return monotone and gaps[-1] < 0.05, "gaps " + ", ".join(f"{x:.4f}" for x in gaps)


def _integral_form(threads):
    rep = residual_report("f", [1e-1, 1e-2, 1e-3, 1e-4, 1e-5], threads=threads)
    return rep.exponent >= 0.4, f"fitted exponent {rep.exponent:.3f}"


def _g_vs_F(threads):
    rep = residual_report("g", [1e-2, 1e-3, 1e-4], threads=threads)
    return rep.exponent >= 0.4, f"fitted exponent {rep.exponent:.3f}"


def _second_difference():
    worst = 0.0
    for a in (0.5, 0.1, 0.01):
        h = 1e-3 * a
        d2 = (f_abel(a + h).value - 2 * f_abel(a).value + f_abel(a - h).value) / (h * h)
        worst = max(worst, abs(d2 / g_abel(a).value - 1))
    return worst < 1e-4, f"max relative deviation {worst:.2e}"


def _ordered_pairs(n, with_one):
    def prime(k):
        return k > 1 and all(k % d for d in range(2, math.isqrt(k) + 1))
    member = (lambda k: k == 1 or (k != 2 and prime(k))) if with_one else prime
    return sum(1 for p in range(1, n) if member(p) and member(n - p))


def _central_terms():
    bad = []
    for n in range(2, 21, 2):
        if central_term(n, n, ModeSet.ALL).normalized != 1:
            bad.append(f"all n={n}")
        if central_term(n, n, ModeSet.ODD).normalized * 2 != 1:
            bad.append(f"odd n={n}")
    for n in range(2, 41, 2):
        for modes, with_one in ((ModeSet.PRIMES_P_PRIME, True), (ModeSet.PRIMES_P, False)):
            if central_term(n, n, modes).raw != _ordered_pairs(n, with_one):
                bad.append(f"{modes.value} n={n}")
    for modes in ModeSet:
        for n in range(2, 21, 2):
            for m in range(2, 21, 2):
                if n != m and central_term(n, m, modes).raw != 0:
                    bad.append(f"{modes.value} ({n},{m})")
    return not bad, "all cells exact" if not bad else "mismatch: " + ", ".join(bad[:5])


def _two_point(seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        du, dv = rng.uniform(-10, 10, size=2)
        eps = 10 ** rng.uniform(-3, 0)
        R = 10 ** rng.uniform(-0.5, 0.5)
        s = two_point_scalar(du, dv, eps, R, int(rng.integers(1, 20000)))
        worst = max(worst, abs(s.mode_sum - s.closed_form) / s.bound)
    return worst <= 1.0, f"max |difference|/bound {worst:.3f} over 100 samples"


def _non_renormalizable():
    rep = prime_energy_report(1.0, [1e-2, 1e-3, 1e-4])
    plateaus = True
    for modes in (ModeSet.ALL, ModeSet.EVEN, ModeSet.ODD):
        c = abs(float(eps_squared_coefficient(modes)) / math.pi)
        for eps in (1e-2, 1e-3):
            a = renormalized_energy(modes, 1.0, eps).renormalized
            b = renormalized_energy(modes, 1.0, eps / 2).renormalized
            plateaus &= abs(a - b) < 4 * c * eps ** 2 + 1e-9
    return rep.growth > 10 and plateaus, f"prime growth x{rep.growth:.1f}, integer plateaus {'hold' if plateaus else 'broken'}"


def _prime_zeta():
    parts, ok = [], True
    for s in (1.5, 2.0, 3.0, 5.0):
        d = prime_zeta_direct(s, 10 ** 8)
        m = prime_zeta_mobius(s)
        bound = d.tail_bound + mobius_tail_bound(s, 64) + 1e-14
        gap = abs(d.value - m)
        ok &= gap <= bound
        parts.append(f"s={s:g}: {gap:.1e} <= {bound:.1e}")
    return ok, "; ".join(parts)


CRITERIA = (
    (1, "renormalized Casimir densities", 1.0, lambda o: _casimir_values()),
    (2, "closed-form damped energy identity", 1.0, lambda o: _closed_form()),
    (3, "Mertens constant", 1.0, lambda o: _mertens()),
    (4, "asymptotic f coefficients", 1.0, lambda o: _coefficients()),
    (5, "f(a) leading law", 120.0, lambda o: _leading_law()),
    (6, "integral form residual decay", 180.0, lambda o: _integral_form(o["threads"])),
    (7, "g(a) vs F(a) residual decay", 120.0, lambda o: _g_vs_F(o["threads"])),
    (8, "second difference of f equals g", 10.0, lambda o: _second_difference()),
    (9, "central terms", 30.0, lambda o: _central_terms()),
    (10, "two-point mode sum vs closed form", 5.0, lambda o: _two_point(o["seed"])),
    (11, "non-renormalizability signature", 120.0, lambda o: _non_renormalizable()),
    (12, "prime zeta cross-method", 60.0, lambda o: _prime_zeta()),
)


def run_criterion(number, threads=1, seed=0):
    for num, title, budget, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            ok, detail = fn({"threads": threads, "seed": seed})
            elapsed = time.perf_counter() - start
            if elapsed >= budget:
                detail += "; over time budget"
            return CriterionResult(num, title, bool(ok) and elapsed < budget, detail, elapsed, budget)
    raise ValueError(f"no criterion {number}")


def run_all(threads=1, seed=0):
    return [run_criterion(num, threads, seed) for num, *_ in CRITERIA]
