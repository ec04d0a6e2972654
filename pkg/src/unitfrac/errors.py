"""Exception hierarchy for the unitfrac package.

Everything derives from UnitFracError so callers can catch domain errors
with a single except clause; most are also ValueErrors because they signal
bad input values.
"""

from __future__ import annotations


class UnitFracError(Exception):
    """Base class for all errors raised by this package."""


class PowerOfTwoError(UnitFracError, ValueError):
    """The base k is a power of 2 (including 1 and 2), which is not allowed."""


class EmptyArrayError(UnitFracError, ValueError):
    """An operation needed a nonzero entry but the array is all zeros."""


class NotInSkError(UnitFracError, ValueError):
    """A denominator does not factor as 2^a * k^b with a in {0, 1, 2}."""

    def __init__(self, x: int, k: int) -> None:
        super().__init__(f"{x} is not of the form 2^a * {k}^b with a in {{0, 1, 2}}")
        self.x = x
        self.k = k


class MoveUndefinedError(UnitFracError, ValueError):
    """The requested move does not exist for this residue class of k."""


class NotApplicableError(UnitFracError, ValueError):
    """The array lacks an entry the move would need to decrement."""


class IrreducibleError(UnitFracError, RuntimeError):
    """No reduction move applies.

    This cannot happen for an array that encodes a solution (other than the
    trivial one), so hitting it means the input was not a solution array or
    there is an internal bug.
    """


class NoNontrivialSolutionError(UnitFracError, ValueError):
    """No nontrivial solution exists for the requested (k, n)."""


class ParseError(UnitFracError, ValueError):
    """A serialized array document is malformed."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{message} (at {location})" if location else message)
        self.location = location


class KMismatchError(UnitFracError, ValueError):
    """A parsed document carries a different base k than the caller expected."""
