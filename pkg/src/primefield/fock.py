"""Exact fermionic Fock space for bosonisation central terms.

Real fermions b^j_r (species j = 1, 2, ...; r an integer mode) satisfy
{b^i_r, b^j_s} = delta^{ij} delta_{r,-s} and b^j_r |0> = 0 for r > 0, so
b^j_{-r} = (b^j_r)^dagger creates.  A basis state is

    (c^dagger)^occ  b^1_{-q} ... b^1_{-q'}  b^2_{-q} ...  |0>

with each species' created modes q > 0 listed in ascending order.  When 0 is
a mode the two Majorana zero modes b^1_0, b^2_0 ((b^j_0)^2 = 1/2) are paired
into one complex fermion c = (b^1_0 + i b^2_0)/sqrt(2) with c |0> = 0.

Amplitudes are exact Gaussian rationals.  States with occ = 1 store their
amplitude in units of 1/sqrt(2), which keeps every zero-mode action rational.
"""
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from primefield.errors import CutoffError, DomainError
from primefield.modes import ModeSet
from primefield.primes import sieve


class ExactComplex:
    """re + i im with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def of(cls, x):
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x)

    def __add__(self, other):
        o = ExactComplex.of(other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = ExactComplex.of(other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other):
        o = ExactComplex.of(other)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex.of(other)
        d = o.re * o.re + o.im * o.im
        return self * ExactComplex(o.re / d, -o.im / d)

    def conjugate(self):
        return ExactComplex(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = ExactComplex.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self.re}, {self.im})"


I = ExactComplex(0, 1)
_HALF = Fraction(1, 2)


class FockVector:
    """Sparse vector: {(occ, (modes of species 1), (modes of species 2), ...): amplitude}."""

    __slots__ = ("species", "amps")

    def __init__(self, species=2, amps=None):
        self.species = species
        self.amps = {}
        for state, amp in (amps or {}).items():
            amp = ExactComplex.of(amp)
            if amp:
                self.amps[state] = amp

    @classmethod
    def vacuum(cls, species=2):
        return cls(species, {(0,) + ((),) * species: ExactComplex(1)})

    def copy(self):
        return FockVector(self.species, dict(self.amps))

    def __add__(self, other):
        out = dict(self.amps)
        for s, a in other.amps.items():
            out[s] = out.get(s, ExactComplex()) + a
        return FockVector(self.species, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = ExactComplex.of(c)
        return FockVector(self.species, {s: a * c for s, a in self.amps.items()})

    def vdot(self, other):
        """<self|other> (antilinear in self)."""
        acc = ExactComplex()
        for s, a in self.amps.items():
            b = other.amps.get(s)
            if b is not None:
                term = a.conjugate() * b
                acc = acc + (term * _HALF if s[0] else term)
        return acc

    def vacuum_amplitude(self):
        return self.amps.get((0,) + ((),) * self.species, ExactComplex())

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.amps == other.amps

    def __len__(self):
        return len(self.amps)

    def __repr__(self):
        return f"FockVector({self.amps!r})"


def _act(state, species, r):
    """b^species_r on one basis state: (new_state, factor) or None."""
    occ, lists = state[0], state[1:]
    if r == 0:
        if species not in (1, 2):
            raise DomainError("zero modes exist only for species 1 and 2")
        # b^1_0 = (c + c^dag)/sqrt2, b^2_0 = -i (c - c^dag)/sqrt2, with the
        # occ = 1 amplitudes stored in units of 1/sqrt2
        if occ == 0:
            factor = ExactComplex(1) if species == 1 else I
        else:
            factor = ExactComplex(_HALF) if species == 1 else ExactComplex(0, -_HALF)
        return (1 - occ,) + lists, factor
    j = species - 1
    modes = lists[j]
    q = abs(r)
    pos = _bisect(modes, q)
    present = pos < len(modes) and modes[pos] == q
    passed = occ + sum(len(lists[k]) for k in range(j)) + pos
    sign = -1 if passed % 2 else 1
    if r < 0:
        if present:
            return None
        new = modes[:pos] + (q,) + modes[pos:]
    else:
        if not present:
            return None
        new = modes[:pos] + modes[pos + 1:]
    lists = lists[:j] + (new,) + lists[j + 1:]
    return (occ,) + lists, ExactComplex(sign)


def _bisect(seq, x):
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def apply_mode(species, r, v):
    """b^species_r |v>."""
    if not 1 <= species <= v.species:
        raise DomainError(f"species must be in [1, {v.species}], got {species}")
    out = {}
    for state, amp in v.amps.items():
        hit = _act(state, species, r)
        if hit is None:
            continue
        new, factor = hit
        out[new] = out.get(new, ExactComplex()) + amp * factor
    return FockVector(v.species, out)


@dataclass(frozen=True)
class BilinearOperator:
    """sum over terms of coeff * :b^1_r b^2_s:.

    Operators of different species anticommute, so :b^1_r b^2_s: = b^1_r b^2_s
    (creation parts already stand where normal ordering puts them up to the
    fermionic sign, which is the same).  ``terms`` holds (r, s, coeff).
    """

    terms: tuple

    def adjoint(self):
        # (b^1_r b^2_s)^dag = b^2_{-s} b^1_{-r} = -b^1_{-r} b^2_{-s}
        return BilinearOperator(tuple(sorted(
            ((-r, -s, -c.conjugate()) for r, s, c in self.terms), key=lambda t: t[0])))

    def max_mode(self):
        return max((max(abs(r), abs(s)) for r, s, _ in self.terms), default=0)

    def __len__(self):
        return len(self.terms)


def apply_bilinear(op, v, cutoff):
    """op |v>; every mode in ``op`` must satisfy |mode| <= cutoff."""
    if op.max_mode() > cutoff:
        raise CutoffError(f"operator uses mode {op.max_mode()} beyond cutoff {cutoff}")
    out = FockVector(v.species)
    for r, s, c in op.terms:
        out = out + apply_mode(1, r, apply_mode(2, s, v)).scale(c)
    return out


def _mode_predicate(modes, limit, zero_modes):
    modes = ModeSet.parse(modes)
    table = sieve(max(limit, 2)) if modes.is_prime_family else None
    is_prime = table.is_prime if table else None

    def ok(r):
        if r == 0:
            return zero_modes and modes.contains_zero
        return modes.contains(abs(r), is_prime)
    return modes, ok


def _check_index(n, modes):
    n = int(n)
    if n == 0:
        raise DomainError("the composite index n must be nonzero")
    if modes is not ModeSet.ALL and n % 2:
        raise DomainError(f"{modes.name} composites need an even index, got {n}")
    return n


def build_composite(n, modes, cutoff, convention="hermitian", zero_modes=True):
    """a_n = sum_r coeff :b^1_r b^2_{n-r}: over r, n-r in +-modes, |r|, |n-r| <= cutoff.

    convention "hermitian": coeff = i for every n, which makes a_{-n} the
    adjoint of a_n.  convention "literal": coeff = i sgn(n), for which
    a_{-n} = -a_n^dagger.  With ``zero_modes`` the mode 0 takes part for the
    families containing it (all integers, even integers).
    """
    modes = ModeSet.parse(modes)
    n = _check_index(n, modes)
    cutoff = int(cutoff)
    if cutoff < 1:
        raise DomainError(f"cutoff must be >= 1, got {cutoff}")
    if convention == "hermitian":
        coeff = I
    elif convention == "literal":
        coeff = I * (1 if n > 0 else -1)
    else:
        raise DomainError(f"unknown convention {convention!r}")
    modes, ok = _mode_predicate(modes, cutoff, zero_modes)
    terms = []
    for r in range(-cutoff, cutoff + 1):
        s = n - r
        if abs(s) <= cutoff and ok(r) and ok(s):
            terms.append((r, s, coeff))
    return BilinearOperator(tuple(terms))


@dataclass(frozen=True)
class CentralTermReport:
    """<0|[a_n, a_{-m}]|0> computed exactly; normalized = raw / n."""

    modes: ModeSet
    n: int
    m: int
    raw: Fraction
    raw_imag: Fraction
    normalized: Fraction
    cutoff: int


def central_term(n, m, modes, cutoff=None, convention="hermitian", zero_modes=True):
    """Vacuum expectation of [a_n, a_{-m}] by sparse application.

    Every contributing contraction has |r| <= max(|n|, |m|), so a cutoff of
    |n| + |m| (the default) is sufficient; smaller cutoffs raise CutoffError.
    """
    modes = ModeSet.parse(modes)
    n = _check_index(n, modes)
    m = _check_index(m, modes)
    window = abs(n) + abs(m)
    cutoff = window if cutoff is None else int(cutoff)
    if cutoff < window:
        raise CutoffError(f"cutoff {cutoff} is below the window |n| + |m| = {window}")
    A = build_composite(n, modes, cutoff, convention, zero_modes)
    B = build_composite(-m, modes, cutoff, convention, zero_modes)
    vac = FockVector.vacuum()
    ab = apply_bilinear(A, apply_bilinear(B, vac, cutoff), cutoff).vacuum_amplitude()
    ba = apply_bilinear(B, apply_bilinear(A, vac, cutoff), cutoff).vacuum_amplitude()
    raw = ab - ba
    return CentralTermReport(modes, n, m, raw.re, raw.im, raw.re / n, cutoff)


def enumerate_prime_states(n, parts, modes=ModeSet.PRIMES_P):
    """All multisets (ascending tuples) of ``parts`` members of ``modes`` summing to n."""
    modes = ModeSet.parse(modes)
    n, parts = int(n), int(parts)
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if parts < 1:
        raise DomainError(f"parts must be >= 1, got {parts}")
    table = sieve(n)
    members = [k for k in range(1, n + 1) if modes.contains(k, table.is_prime)]
    out = []

    def extend(prefix, start, remaining, left):
        if left == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for i in range(start, len(members)):
            p = members[i]
            if p * left > remaining:
                break
            prefix.append(p)
            extend(prefix, i, remaining - p, left - 1)
            prefix.pop()

    extend([], 0, n, parts)
    return out


def normalization_factor(state):
    """1 / sqrt(prod of multiplicity!) for a multiset of modes."""
    counts = Counter(state)
    if not counts:
        raise DomainError("state must be a nonempty multiset")
    return 1.0 / math.sqrt(math.prod(math.factorial(c) for c in counts.values()))


def symmetrized_state(parts):
    """sum over orderings sigma of b^1_{-p_s1} b^2_{-p_s2} ... |0>, one species per slot.

    Unnormalised; its squared norm is k! * prod(multiplicity!), so
    normalization_factor(parts) / sqrt(k!) makes it a unit vector.
    """
    k = len(parts)
    if any(p <= 0 for p in parts):
        raise DomainError("state modes must be positive")
    vac = FockVector.vacuum(species=k)
    total = FockVector(k)
    for perm in itertools.permutations(parts):
        v = vac
        for species in range(k, 0, -1):
            v = apply_mode(species, -perm[species - 1], v)
        total = total + v
    return total
