"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`PrimefieldError`; the CLI maps ``DomainError`` to exit code 2 and
the computational failures to exit code 1.
"""


class PrimefieldError(Exception):
    pass


class DomainError(PrimefieldError, ValueError):
    """Input outside an operation's precondition."""


class PoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class UnsupportedModesError(DomainError):
    """The mode set is not handled by this operation."""


class CutoffError(DomainError):
    """A mode window is too small for the requested computation."""


class CapacityError(PrimefieldError):
    """A requested tolerance is out of reach of the sieve capability.

    ``best_bound`` is the smallest tail bound achievable at ``cutoff``.
    """

    def __init__(self, message, best_bound, cutoff):
        super().__init__(f"{message} (best achievable tail bound {best_bound:.3e} "
                         f"at cutoff {cutoff})")
        self.best_bound = best_bound
        self.cutoff = cutoff


class QuadratureError(PrimefieldError):
    """An oscillatory integral could not meet its tolerance."""

    def __init__(self, message, estimate):
        super().__init__(f"{message} (error estimate {estimate:.3e})")
        self.estimate = estimate
