"""Exception hierarchy for PowerNet.

Core functions raise these; the service layer turns them into ``Err`` values and
the CLI maps ``exit_code`` onto the process status.
"""

from __future__ import annotations


class PowerNetError(Exception):
    """Base class for every error raised by the package."""

    exit_code: int = 1


class InvalidInputError(PowerNetError):
    """Arguments or documents violate a precondition."""

    exit_code = 1


class ShapeError(InvalidInputError):
    """Dimension, depth or power mismatch between nets or inputs."""


class StrategyError(InvalidInputError):
    """The requested build strategy does not apply to the input."""


class UnsupportedError(InvalidInputError):
    """The request exceeds a documented cap."""


class CompletenessError(InvalidInputError):
    """A multivariate support is not downward closed."""


class DocumentError(InvalidInputError):
    """A JSON or CSV document could not be parsed."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class NumericalError(PowerNetError):
    """A computation failed numerically."""

    exit_code = 2


class NonFiniteError(NumericalError):
    """Evaluation produced an overflow or NaN."""


class SingularSystemError(NumericalError):
    """A Vandermonde system is singular to working precision."""


class ConvergenceError(NumericalError):
    """An iteration exhausted its budget."""


class OracleMismatchError(NumericalError):
    """A constructed net disagrees with its reference evaluation."""
