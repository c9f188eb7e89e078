"""
Exceptions raised by the toolkit.

Input problems derive from ValueError so callers can treat them as usage errors.
Anything under NumericalVerdictError means the numbers could not be trusted.
"""
from typing import Any, List, Optional


class ThetanullsError(Exception):
    """Base class for all toolkit errors."""


class InvalidPeriodMatrixError(ThetanullsError, ValueError):
    pass


class GenusRangeError(ThetanullsError, ValueError):
    pass


class SampleBudgetError(ThetanullsError, ValueError):
    pass


class PreconditionError(ThetanullsError, ValueError):
    pass


class PeriodMatrixUnavailableError(ThetanullsError):
    pass


class NumericalVerdictError(ThetanullsError):
    """A computed result is not trustworthy at the requested tolerances."""


class ThetaPrecisionError(NumericalVerdictError):
    """The requested eps cannot be certified within the lattice-point budget."""

    def __init__(self, message: str, best_bound: float):
        super().__init__(message)
        self.best_bound = best_bound


class AmbiguousVanishingError(NumericalVerdictError):
    """Some theta value fell into the band between vanish_tol and 10*vanish_tol."""

    def __init__(self, message: str, verdicts: Optional[List[Any]] = None):
        super().__init__(message)
        self.verdicts = verdicts or []


class UnreliableRankError(NumericalVerdictError):
    """The singular-value gap at the rank cut is too small to trust the cut."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class BoundViolationError(NumericalVerdictError):
    """A proven upper bound was exceeded; either the theorem or a tolerance is wrong."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class ReplayMismatchError(NumericalVerdictError):
    """Re-running a stored configuration did not reproduce the stored result."""
