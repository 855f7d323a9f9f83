"""Exception hierarchy for the dispersion toolkit.

Every error carries the CLI exit code it maps to, so the entry point can
translate failures without a long chain of except clauses.
"""

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from src.models.case_models import ParseReport


class SteadyError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2


class EmptySeries(SteadyError):
    """A statistic was requested on a series with no values."""


class InvalidProbability(SteadyError):
    """A quantile probability outside [0, 1]."""

    exit_code = 1


class InvalidDuration(SteadyError):
    """A duration that is not a finite, strictly positive number."""


class DegenerateInput(SteadyError):
    """Input that makes an indicator undefined (e.g. a zero median)."""


class ShapeMismatch(SteadyError):
    """Two series that should be paired have different lengths."""


class UndefinedCorrelation(SteadyError):
    """Pearson correlation requested for a constant series."""


class InsufficientData(SteadyError):
    """Too few processes for a cross-process computation."""


class UnknownIndicator(SteadyError):
    """An indicator name that is not a column of the indicator table."""

    exit_code = 1


class InvalidThreshold(SteadyError):
    """A malformed or empty threshold setting."""

    exit_code = 1


class FatalParseError(SteadyError):
    """The input cannot be parsed or analyzed at all (unreadable, missing header, no valid rows).

    Attributes:
        report: Line-level diagnostics gathered before the failure, if any
    """

    def __init__(self, message: str, report: Optional["ParseReport"] = None):
        super().__init__(message)
        self.report = report
