"""Integer families that label field modes on the cylinder."""
import enum


class ModeSet(enum.Enum):
    """Which positive integers label the allowed modes.

    ``PRIMES_P`` is the usual set of primes; ``PRIMES_P_PRIME`` is the odd
    primes together with 1 (so 2 is excluded and 1 included).
    """

    ALL = "all"
    EVEN = "even"
    ODD = "odd"
    PRIMES_P = "primes"
    PRIMES_P_PRIME = "primes1"

    @property
    def is_prime_family(self):
        return self in (ModeSet.PRIMES_P, ModeSet.PRIMES_P_PRIME)

    @property
    def progression(self):
        """(first, step) of the arithmetic progression for integer families."""
        return {
            ModeSet.ALL: (1, 1),
            ModeSet.EVEN: (2, 2),
            ModeSet.ODD: (1, 2),
        }[self]

    @property
    def contains_zero(self):
        return self in (ModeSet.ALL, ModeSet.EVEN)

    def contains(self, k, is_prime):
        """Membership of a positive integer ``k``; ``is_prime`` is a predicate."""
        if k <= 0:
            return False
        if self is ModeSet.ALL:
            return True
        if self is ModeSet.EVEN:
            return k % 2 == 0
        if self is ModeSet.ODD:
            return k % 2 == 1
        if self is ModeSet.PRIMES_P:
            return is_prime(k)
        return k == 1 or (k != 2 and is_prime(k))

    @classmethod
    def parse(cls, text):
        """Accept the enum value or a few spellings used on the command line."""
        if isinstance(text, cls):
            return text
        aliases = {
            "all": cls.ALL, "integers": cls.ALL,
            "even": cls.EVEN, "odd": cls.ODD,
            "primes": cls.PRIMES_P, "p": cls.PRIMES_P,
            "primes1": cls.PRIMES_P_PRIME, "pprime": cls.PRIMES_P_PRIME,
            "p'": cls.PRIMES_P_PRIME, "odd-primes-and-one": cls.PRIMES_P_PRIME,
        }
        try:
            return aliases[str(text).strip().lower()]
        except KeyError:
            raise ValueError(f"unknown mode set {text!r}") from None
