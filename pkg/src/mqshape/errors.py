"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class MqShapeError(Exception):
    """Base class for all package-specific errors."""


class SpecError(MqShapeError, ValueError):
    """A problem description is malformed or internally inconsistent."""


class InputError(MqShapeError, ValueError):
    """User-supplied data (node sets, CSV files, values) is invalid."""


class PreconditionError(MqShapeError, ValueError):
    """A documented admissibility condition does not hold for the inputs."""


class NumericError(MqShapeError, ArithmeticError):
    """A computation left the representable or finite range."""


class ConditioningError(NumericError):
    """A linear system was too ill-conditioned to solve reliably."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate
