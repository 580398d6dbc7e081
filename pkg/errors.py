"""OGC exception hierarchy.

Every error raised on purpose by the library derives from :class:`OGCError`; the
CLI maps the classes onto exit codes (see ``main.py``).
"""

from typing import Optional


class OGCError(Exception):
    """Base class for all library errors."""


# --- field ---

class NotPrime(OGCError, ValueError):
    """The requested characteristic is not a prime."""


class TooLarge(OGCError, ValueError):
    """The requested field order exceeds the supported maximum."""


class NoIrreducibleFound(OGCError, RuntimeError):
    """No irreducible modulus was found (internal error for valid input)."""


class DivisionByZero(OGCError, ZeroDivisionError):
    """Inverse of the zero element requested."""


# --- linear algebra / forms ---

class DimMismatch(OGCError, ValueError):
    """Vector or matrix dimensions do not agree."""


class RankDeficient(OGCError, ValueError):
    """A basis matrix does not have full row rank."""


class ZeroVector(OGCError, ValueError):
    """A projective point was requested for the zero vector."""


# --- resources ---

class BudgetExceeded(OGCError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int) -> None:
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(
            "{}: needs {} but the budget is {}".format(what, needed, budget)
        )


# --- caps / hadamard ---

class InvalidJ(OGCError, ValueError):
    """Malformed index set J for the cap construction."""


class TableMismatch(OGCError, ValueError):
    """The requested table does not match the position of 2n+1 in J."""


class EvenCharacteristic(OGCError, ValueError):
    """The construction needs a field of odd characteristic."""


class NotTruncated(OGCError, ValueError):
    """A cap family must be truncated before sign extraction."""


class NotHadamard(OGCError, ValueError):
    """The matrix is not a Hadamard matrix."""


# --- cli ---

class UsageError(OGCError):
    """Bad command-line usage."""


class VerificationFailed(OGCError):
    """A brute-force check disagreed with the expected value."""

    def __init__(self, message: str, details: Optional[dict] = None) -> None:
        self.details = details or {}
        super().__init__(message)
