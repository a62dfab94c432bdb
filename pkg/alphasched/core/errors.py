"""
Exception hierarchy for alphasched.

Every error carries a human readable ``detail`` and the process exit code the
CLI maps it to, much like an HTTP error carries its status code.
"""

from typing import Optional


class SchedulingError(Exception):
    """Base class for all alphasched errors."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class InstanceError(SchedulingError, ValueError):
    """Invalid instance data (negative or non-finite field, bad ids, ...)."""

    exit_code = 2


class CycleError(InstanceError):
    """The precedence relation contains a directed cycle."""


class ParseError(InstanceError):
    """Malformed instance document."""

    def __init__(self, detail: str, line: int = 0, column: int = 0, source: str = "<string>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {detail}")
        self.reason = detail


class TooLarge(SchedulingError):
    """Instance exceeds the size limit of an exhaustive routine."""

    exit_code = 2


class SolverError(SchedulingError):
    """Base class for LP engine failures."""

    exit_code = 3


class IterationLimit(SolverError):
    """Pivot or cut-round budget exhausted."""


class NumericalError(SolverError):
    """Pivot too small or solution failed the residual check."""


class InfeasibleLp(SolverError):
    """Phase one could not reach a feasible point."""


class UnboundedLp(SolverError):
    """The objective decreases without bound along an extreme ray."""


class PrecedenceViolation(SchedulingError):
    """A job order or LP vector contradicts the precedence constraints."""


class OrderViolatesPrecedence(PrecedenceViolation):
    """A list handed to a list scheduler does not extend the precedence order."""


class UnsupportedSchedule(SchedulingError):
    """The alpha-point machinery only accepts preemptive list schedules."""
