"""Exception hierarchy.

Numerical routines raise these instead of returning NaN; a NaN that leaks out
of the library is a bug, never a value.
"""


class PairwaveError(Exception):
    """Base class for all library errors."""


class DomainError(PairwaveError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class AccuracyError(PairwaveError, ArithmeticError):
    """Requested accuracy could not be certified (truncation, convergence)."""


class ContourError(AccuracyError):
    """Contour-deformed quadrature produced an inconsistent result."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class AssemblyError(AccuracyError):
    """Asymptotic series assembly failed its internal consistency check."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class SingularityError(PairwaveError, ZeroDivisionError):
    """Evaluation requested at (or too close to) a pole of the expression."""

    def __init__(self, message, hint=None):
        super().__init__(message)
        self.hint = hint


class SingularDataError(PairwaveError, ValueError):
    """Initial data makes a denominator vanish."""


class StiffnessError(PairwaveError, ArithmeticError):
    """ODE integrator step size collapsed."""


class RegionError(DomainError):
    """Position outside the region where the approximation is valid."""


class InfeasibleTrapError(PairwaveError, ValueError):
    """No trap ground state satisfies the normalization constraint."""


class SolverError(PairwaveError, ArithmeticError):
    """Iterative solver failed to converge."""


class DataError(PairwaveError, ValueError):
    """Supplied data function is unusable (non-integrable, wrong shape)."""


class ConfigError(PairwaveError, ValueError):
    """Invalid run configuration."""
