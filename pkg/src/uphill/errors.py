"""Exception types shared across the solver stack."""


class UphillError(Exception):
    """Base class for all package errors."""


class ConfigurationError(UphillError):
    """Invalid parameter combination (grid spacing, tolerances, flags)."""


class DomainError(UphillError):
    """Argument outside its mathematical domain."""


class GridMismatchError(UphillError):
    """Profiles or operators built on incompatible grids."""


class KernelResolutionError(UphillError):
    """Grid spacing too coarse to resolve the interaction kernel."""


class MobilityDegeneracyError(UphillError):
    """Mobility vanished along the integration path."""


class IterationLimitError(UphillError):
    """Iteration cap exceeded before reaching tolerance."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []


class NonContractiveError(UphillError):
    """Linearized operator is not contractive on the antisymmetric subspace."""

    def __init__(self, message, gamma=None):
        super().__init__(message)
        self.gamma = gamma


class ContractionFailureError(UphillError):
    """Outer iteration failed to contract over several consecutive steps."""


class BracketError(UphillError):
    """Shooting bracket does not straddle the target boundary value."""

    def __init__(self, message, mu_low=None, mu_high=None):
        super().__init__(message)
        self.mu_low = mu_low
        self.mu_high = mu_high


class TailDiagnosticError(UphillError):
    """Profile tail unusable for an exponential-rate fit."""
