"""Exception types raised across the package."""


class ProbeOptError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ProbeOptError, ValueError):
    """Scenario or channel specification is inconsistent."""


class DegenerateInputError(ProbeOptError, ValueError):
    """Zero-norm vector or column where a nonzero one is required."""


class SingularityError(ProbeOptError, ValueError):
    """Matrix is rank deficient where full column rank is required."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class InfeasibleError(ProbeOptError):
    """Optimization problem has no feasible point.

    ``max_violation`` carries the smallest constraint violation found, which
    serves as the infeasibility certificate.
    """

    def __init__(self, message, max_violation=None):
        super().__init__(message)
        self.max_violation = max_violation


class UnboundedError(ProbeOptError):
    """Linear program objective is unbounded below."""


class ConvergenceError(ProbeOptError):
    """Iterative solver hit its iteration cap without meeting tolerance."""
