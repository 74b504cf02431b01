"""Kernel backend selection.

The compiled Cython kernels are used when the extension was built;
otherwise the numpy implementation is selected at import.  Both expose
``primes_upto``, ``count_primes`` and ``odd_prime_exp_sum``.
"""
from primefield import _pykernels

try:
    from primefield import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"numpy": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "numpy"
_active = BACKENDS[BACKEND]


def get_backend(name=None):
    """Return the kernel module ``name`` (default: the active one)."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; "
                         f"available: {sorted(BACKENDS)}") from None


def set_backend(name):
    """Switch the active backend for the whole process; returns the previous name."""
    global _active, BACKEND
    module = get_backend(name)
    previous = BACKEND
    _active, BACKEND = module, name
    return previous


def primes_upto(limit):
    return _active.primes_upto(limit)


def count_primes(limit):
    return _active.count_primes(limit)


def odd_prime_exp_sum(limit, power, re_z, im_z):
    return _active.odd_prime_exp_sum(limit, float(power), float(re_z), float(im_z))
