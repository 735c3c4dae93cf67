"""Stationary uphill-diffusion profiles of a 1d nonlocal mean-field chain.

Constructs current-carrying stationary magnetization profiles with
Dirichlet reservoirs: a seed glued from the zero-current interface and
the macroscopic transport branch, refined by Newton iteration on the
coupled (m, h) system, with the current tuned by shooting so the
boundary value lands on a prescribed metastable target.
"""

__version__ = "0.1.0"

from .errors import (
    BracketError,
    ConfigurationError,
    ContractionFailureError,
    DomainError,
    GridMismatchError,
    IterationLimitError,
    KernelResolutionError,
    MobilityDegeneracyError,
    NonContractiveError,
    TailDiagnosticError,
    UphillError,
)
from .grid import GridSpec, KernelTable, Profile, build_grid, build_kernel, convolve
from .thermo import (
    ThermoParams,
    entropy,
    first_variation,
    lp_free_energy,
    mobility,
    phi_beta,
    solve_mbeta,
    spinodal,
)
from .instanton import solve_instanton, tail_rate
from .macro import MacroSpec, macro_current, solve_macro_profile
from .seed import apply_H, build_m0, seed_current
from .linearized import LinearOperator, linearize, solve_second_kind, spectral_radius_antisym
from .newton import SolverConfig, SolverReport, alpha_norm, inner_solve, outer_solve
from .shooting import ShootResult, boundary_of_current, shoot

__all__ = [
    "UphillError",
    "ConfigurationError",
    "DomainError",
    "GridMismatchError",
    "KernelResolutionError",
    "MobilityDegeneracyError",
    "IterationLimitError",
    "NonContractiveError",
    "ContractionFailureError",
    "BracketError",
    "TailDiagnosticError",
    "GridSpec",
    "KernelTable",
    "Profile",
    "build_grid",
    "build_kernel",
    "convolve",
    "ThermoParams",
    "entropy",
    "phi_beta",
    "mobility",
    "solve_mbeta",
    "spinodal",
    "lp_free_energy",
    "first_variation",
    "solve_instanton",
    "tail_rate",
    "MacroSpec",
    "macro_current",
    "solve_macro_profile",
    "build_m0",
    "apply_H",
    "seed_current",
    "LinearOperator",
    "linearize",
    "solve_second_kind",
    "spectral_radius_antisym",
    "SolverConfig",
    "SolverReport",
    "inner_solve",
    "outer_solve",
    "alpha_norm",
    "ShootResult",
    "boundary_of_current",
    "shoot",
]
