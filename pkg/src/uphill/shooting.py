"""Tune the current so the emergent boundary value hits a target.

The solver fixes the current and lets the boundary magnetization drift;
the boundary value decreases as the current grows, so a target in the
metastable interval is reached by bisecting the current inside a bracket
derived from the seed-current formula at target +- eta.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketError, DomainError
from .grid import GridSpec, KernelTable, Profile
from .newton import SolverConfig, SolverReport, outer_solve
from .seed import glue_value, seed_current
from .macro import transport_potential
from .thermo import ThermoParams

logger = logging.getLogger(__name__)

MU_TOL = 1e-6


@dataclass
class ShootResult:
    j: float
    m: Profile
    h: Profile
    report: SolverReport
    history: list = field(default_factory=list)  # (j, mu_final) per trial
    monotone: bool = True


def mu0_for_current(params: ThermoParams, m_glue: float, j: float) -> float:
    """Invert the seed-current relation: g(mu0) = g(m_glue) + j."""
    target = transport_potential(params.beta, m_glue) + j
    lo, hi = params.m_star, m_glue
    g = lambda m: transport_potential(params.beta, m) - target
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:  # g decreasing: value too high means mid too small
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-14:
            break
    return 0.5 * (lo + hi)


def boundary_of_current(
    params: ThermoParams,
    kernel: KernelTable,
    grid: GridSpec,
    mu0: float,
    j: float,
    config: SolverConfig = SolverConfig(),
) -> float:
    """Converged boundary magnetization m(1/eps) at fixed current."""
    _, _, report = outer_solve(params, kernel, grid, mu0, j, config)
    return report.mu_final


def default_eta(params: ThermoParams) -> float:
    return 0.05 * (params.m_beta - params.m_star)


def shoot(
    params: ThermoParams,
    kernel: KernelTable,
    grid: GridSpec,
    mu_target: float,
    eta: float | None = None,
    config: SolverConfig = SolverConfig(),
    mu_tol: float = MU_TOL,
    max_bisections: int = 80,
) -> ShootResult:
    """Bisect the current until |m(1/eps) - mu_target| < mu_tol."""
    if not params.m_star < mu_target < params.m_beta:
        raise DomainError(
            f"target {mu_target} outside the open metastable interval "
            f"({params.m_star:.6f}, {params.m_beta:.6f})"
        )
    if eta is None:
        eta = default_eta(params)
    if eta <= 0:
        raise DomainError("eta must be positive")
    m_glue = glue_value(params, grid)
    # clip eta so both bracket seeds stay strictly metastable
    eta = min(eta, 0.5 * (mu_target - params.m_star), 0.5 * (m_glue - mu_target))
    if eta <= 0:
        raise DomainError(
            f"no metastable room around target {mu_target} for a bracket"
        )
    j_low = seed_current(params, mu_target + eta, m_glue)  # smaller current
    j_high = seed_current(params, mu_target - eta, m_glue)  # larger current

    history = []

    def run(j: float):
        mu0 = mu0_for_current(params, m_glue, j)
        m, h, report = outer_solve(params, kernel, grid, mu0, j, config)
        history.append((j, report.mu_final))
        return m, h, report

    m_lo, h_lo, rep_lo = run(j_low)
    if abs(rep_lo.mu_final - mu_target) < mu_tol:
        return ShootResult(j_low, m_lo, h_lo, rep_lo, history)
    m_hi, h_hi, rep_hi = run(j_high)
    if abs(rep_hi.mu_final - mu_target) < mu_tol:
        return ShootResult(j_high, m_hi, h_hi, rep_hi, history)
    if not (rep_hi.mu_final < mu_target < rep_lo.mu_final):
        raise BracketError(
            f"bracket [{j_low:.6e}, {j_high:.6e}] yields boundary values "
            f"[{rep_hi.mu_final:.6f}, {rep_lo.mu_final:.6f}] that do not "
            f"straddle target {mu_target}",
            mu_low=rep_hi.mu_final,
            mu_high=rep_lo.mu_final,
        )

    monotone = True
    for _ in range(max_bisections):
        j_mid = 0.5 * (j_low + j_high)
        m_mid, h_mid, rep_mid = run(j_mid)
        if abs(rep_mid.mu_final - mu_target) < mu_tol:
            result = ShootResult(j_mid, m_mid, h_mid, rep_mid, history, monotone)
            return result
        if rep_mid.mu_final > mu_target:
            j_low = j_mid
        else:
            j_high = j_mid
        # the guarantee is Lipschitz continuity, not monotonicity: flag
        # (without failing) any observed non-monotone pair of trials
        js = sorted(history)
        if any(b[1] > a[1] + 1e-12 for a, b in zip(js, js[1:])):
            if monotone:
                logger.warning("boundary value non-monotone in the current")
            monotone = False
    raise BracketError(
        f"bisection exhausted {max_bisections} steps without reaching "
        f"|mu - target| < {mu_tol}",
        mu_low=j_low,
        mu_high=j_high,
    )
