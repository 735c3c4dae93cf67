"""Constructive solver for the coupled stationary system.

Inner stage: Newton corrections build m solving m = tanh{beta[J*m + h]}
at frozen h, each correction obtained from a second-kind solve against
the current linearization.  Outer stage: alternate the field update
h = H(m) with inner solves until the field stabilizes; the map contracts
in an exponentially weighted norm, which the report tracks.

Boundary values are emergent: reservoirs follow the running iterate's
edge nodes, and the final boundary magnetization is fixed only by the
choice of current (see the shooting module).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractionFailureError, IterationLimitError
from .grid import GridSpec, KernelTable, Profile, antisymmetrize, convolve
from .linearized import linearize, solve_second_kind, spectral_radius_antisym
from .seed import apply_H, build_m0, seed_delta
from .thermo import ThermoParams, first_variation, mobility


@dataclass(frozen=True)
class SolverConfig:
    inner_tol: float = 1e-12
    outer_tol: float = 1e-10
    max_inner: int = 50
    max_outer: int = 200
    alpha: float = 1.0
    delta_prime: float = 0.1

    def __post_init__(self):
        if min(self.inner_tol, self.outer_tol, self.alpha, self.delta_prime) <= 0:
            raise ValueError("tolerances, alpha and delta_prime must be positive")
        if min(self.max_inner, self.max_outer) < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass
class SolverReport:
    """Convergence history and diagnostics of one full solve."""

    inner_norms: list = field(default_factory=list)  # one list per outer step
    outer_norms: list = field(default_factory=list)  # alpha-norm of field steps
    rho_estimate: float = float("nan")
    gamma: float = float("nan")
    residual: float = float("nan")
    h_consistency: float = float("nan")
    j: float = float("nan")
    mu_final: float = float("nan")
    delta_seed: float = float("nan")
    tau_estimate: float = float("nan")
    n_outer: int = 0

    def as_dict(self) -> dict:
        return {
            "inner_norms": [[float(v) for v in hist] for hist in self.inner_norms],
            "outer_norms": [float(v) for v in self.outer_norms],
            "rho_estimate": self.rho_estimate,
            "gamma": self.gamma,
            "residual": self.residual,
            "h_consistency": self.h_consistency,
            "j": self.j,
            "mu_final": self.mu_final,
            "delta_seed": self.delta_seed,
            "tau_estimate": self.tau_estimate,
            "n_outer": self.n_outer,
        }


def alpha_norm(grid: GridSpec, f: Profile, alpha: float) -> float:
    """Weighted sup norm max_x e^(-alpha*eps*|x|) |f(x)|."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    weight = np.exp(-alpha * grid.epsilon * np.abs(grid.nodes()))
    return float(np.max(weight * np.abs(f.values)))


def fixed_point_residual(
    params: ThermoParams, kernel: KernelTable, m: Profile, h: Profile
) -> float:
    """Sup norm of m - tanh{beta[J*m + h]} with edge-tracking reservoirs."""
    conv = convolve(kernel, m, m.values[0], m.values[-1]).values
    return float(np.max(np.abs(np.tanh(params.beta * (conv + h.values)) - m.values)))


def inner_solve(
    params: ThermoParams,
    kernel: KernelTable,
    grid: GridSpec,
    m_start: Profile,
    h: Profile,
    config: SolverConfig,
) -> tuple[Profile, list]:
    """Newton iteration for m = tanh{beta[J*m + h]} at frozen h.

    Reservoirs track the running iterate's edge nodes, so the assembled
    linearization (with boundary-mass columns) is the exact Jacobian and
    correction norms decay quadratically.
    """
    m = m_start.values.copy()
    history: list = []
    for _ in range(config.max_inner):
        conv = convolve(
            kernel,
            Profile(grid=grid, values=m, symmetry="antisymmetric"),
            m[0],
            m[-1],
        ).values
        defect = np.tanh(params.beta * (conv + h.values)) - m
        defect = antisymmetrize(defect)
        if np.max(np.abs(defect)) < config.inner_tol:
            return Profile(grid=grid, values=m, symmetry="antisymmetric"), history
        A = linearize(
            params,
            kernel,
            Profile(grid=grid, values=m, symmetry="antisymmetric"),
            h,
            (m[0], m[-1]),
        )
        phi = solve_second_kind(A, Profile(grid=grid, values=defect, symmetry="antisymmetric"))
        m = antisymmetrize(m + phi.values)
        history.append(phi.sup_norm())
    raise IterationLimitError(
        f"inner Newton iteration exceeded max_inner={config.max_inner}",
        history=history,
    )


def _tau_estimate(inner_norms: list) -> float:
    """Largest quadratic-convergence ratio across all inner histories."""
    ratios = []
    for hist in inner_norms:
        for prev, cur in zip(hist, hist[1:]):
            if prev >= 1e-7:
                ratios.append(cur / prev**2)
    return max(ratios) if ratios else float("nan")


def outer_solve(
    params: ThermoParams,
    kernel: KernelTable,
    grid: GridSpec,
    mu0: float,
    j: float,
    config: SolverConfig = SolverConfig(),
) -> tuple[Profile, Profile, SolverReport]:
    """Alternate field updates h = H(m) with inner solves until h settles."""
    if j < 0:
        raise ValueError(f"current j must be nonnegative, got {j}")
    report = SolverReport(j=j, delta_seed=seed_delta(params, grid))
    m = build_m0(params, grid, kernel, mu0)
    h = apply_H(params, grid, m, j)
    non_contracting = 0
    prev_step = None
    for outer in range(config.max_outer):
        m, hist = inner_solve(params, kernel, grid, m, h, config)
        report.inner_norms.append(hist)
        report.n_outer = outer + 1
        h_next = apply_H(params, grid, m, j)
        diff = Profile(
            grid=grid,
            values=antisymmetrize(h_next.values - h.values),
            symmetry="antisymmetric",
        )
        step = alpha_norm(grid, diff, config.alpha)
        report.outer_norms.append(step)
        sup_step = float(np.max(np.abs(diff.values)))
        if prev_step is not None and prev_step > 0:
            if step >= prev_step:
                non_contracting += 1
                if non_contracting >= 5:
                    raise ContractionFailureError(
                        "outer iteration failed to contract for 5 consecutive steps"
                    )
            else:
                non_contracting = 0
        prev_step = step
        if sup_step < config.outer_tol:
            h = h_next
            break
        h = h_next
    else:
        raise IterationLimitError(
            f"outer iteration exceeded max_outer={config.max_outer}",
            history=report.outer_norms,
        )
    # one last inner solve against the settled field
    m, hist = inner_solve(params, kernel, grid, m, h, config)
    report.inner_norms.append(hist)
    report.residual = fixed_point_residual(params, kernel, m, h)
    report.h_consistency = float(
        np.max(np.abs(h.values - apply_H(params, grid, m, j).values))
    )
    ratios = [
        b / a for a, b in zip(report.outer_norms, report.outer_norms[1:]) if a > 0
    ]
    report.rho_estimate = max(ratios) if ratios else 0.0
    report.tau_estimate = _tau_estimate(report.inner_norms)
    A = linearize(params, kernel, m, h, (m.values[0], m.values[-1]))
    report.gamma = spectral_radius_antisym(A)
    report.mu_final = float(m.values[-1])
    return m, h, report


def local_current(
    params: ThermoParams, kernel: KernelTable, m: Profile, reservoirs=None
) -> Profile:
    """Current I = -chi(m) d/dx [arctanh(m)/beta - J*m], central differences."""
    if reservoirs is None:
        reservoirs = (m.values[0], m.values[-1])
    dfdm = first_variation(params, kernel, m, reservoirs).values
    grad = np.gradient(dfdm, m.grid.dx, edge_order=2)
    return Profile(grid=m.grid, values=-mobility(params, m.values) * grad)
