"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PoissonNoetherError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroError(PoissonNoetherError, ZeroDivisionError):
    """Exact division by the zero element of a field."""


class ResourceError(PoissonNoetherError):
    """A configured size bound (conductor, group order, retry budget) was exceeded."""


class GroupOrderError(ResourceError):
    pass


class RankMismatchError(PoissonNoetherError, ValueError):
    pass


class ZeroDenominatorError(DivisionByZeroError):
    """A substitution produced a vanishing denominator."""


class InvariantSystemError(PoissonNoetherError, ValueError):
    """Invalid or unsupported invariant system (not invariant, dependent, non-catalog)."""


class NotInInvariantRingError(PoissonNoetherError, ValueError):
    pass


class GroupSpecError(PoissonNoetherError, ValueError):
    """Malformed or unknown group spec string."""


class PresentationError(PoissonNoetherError):
    """No matrix convention makes a block pair invariant."""


class VerificationError(PoissonNoetherError):
    """A constructed generator set failed a certification check.

    ``entry`` names the first failing check, e.g. ``"bracket[x'1, y'2]"``.
    """

    def __init__(self, message: str, entry: str | None = None):
        super().__init__(message)
        self.entry = entry


class ExprSyntaxError(PoissonNoetherError, ValueError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
