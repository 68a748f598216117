"""Exception types shared across the library."""


class MinsurfError(Exception):
    """Base class for all library-specific errors."""


class DegenerateInputError(MinsurfError, ValueError):
    """Input is structurally degenerate (zero polynomial, empty datum, ...)."""


class ZeroFunctionError(MinsurfError, ValueError):
    """Operation undefined for the identically-zero function."""


class EvaluationNearSingularityError(MinsurfError, ValueError):
    """Requested evaluation point is at or within clearance of a puncture."""


class SingularMetricError(MinsurfError, ValueError):
    """Metric quantity requested at a puncture, where it is singular."""


class ModelUndefinedError(MinsurfError, ValueError):
    """No catenoid/plane asymptotic model exists for this end."""


class ParseError(MinsurfError, ValueError):
    """Malformed input document. Carries line/column when available."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class InternalConsistencyError(MinsurfError, RuntimeError):
    """Quantities that must agree mathematically disagree beyond tolerance."""


class NumericInstabilityError(MinsurfError, RuntimeError):
    """A numerical procedure produced unstable or contradictory results."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceFailureError(MinsurfError, RuntimeError):
    """Iteration budget exhausted. Carries the last two estimates."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = tuple(estimates) if estimates is not None else ()
