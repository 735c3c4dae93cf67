"""Seed profile: interface slice glued to the rescaled macroscopic branch.

On [0, 1/sqrt(eps)] the seed follows the zero-current interface; from
there to the right boundary it follows the macroscopic profile rescaled
to that interval, ending at the prescribed boundary magnetization mu0.
The auxiliary field is produced by the integral operator
h(x) = -j*eps*int_0^x dy/chi(m(y)).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, MobilityDegeneracyError
from .grid import GridSpec, KernelTable, Profile, antisymmetrize
from .instanton import cached_instanton, default_half_length
from .macro import MacroSpec, solve_macro_profile, transport_potential
from .thermo import ThermoParams, mobility

_CHI_FLOOR = 1e-10


def glue_node(grid: GridSpec) -> int:
    """Index of the node nearest to 1/sqrt(epsilon)."""
    return grid.index_of(np.sqrt(grid.half_length))


def glue_value(params: ThermoParams, grid: GridSpec) -> float:
    """Interface value at the glue node (boundary value of the macro piece)."""
    bar_m = cached_instanton(params.beta, default_half_length(grid.epsilon), grid.dx)
    x_glue = grid.nodes()[glue_node(grid)]
    return bar_m.at(x_glue)


def build_m0(
    params: ThermoParams,
    grid: GridSpec,
    kernel: KernelTable,
    mu0: float,
) -> Profile:
    """Glued seed magnetization with m0(1/eps) = mu0 exactly."""
    if not params.m_star < mu0 < params.m_beta:
        raise DomainError(
            f"mu0={mu0} outside the metastable interval "
            f"({params.m_star:.6f}, {params.m_beta:.6f})"
        )
    bar_m = cached_instanton(params.beta, default_half_length(grid.epsilon), grid.dx)
    x = grid.nodes()
    ic = grid.center
    ig = glue_node(grid)
    x_glue = x[ig]
    m_glue = bar_m.at(x_glue)
    if m_glue <= mu0:
        raise DomainError(
            f"interface value {m_glue:.6f} at the glue node does not exceed "
            f"mu0={mu0}; epsilon={grid.epsilon} too large for this boundary value"
        )
    values = np.zeros(grid.n_points)
    for i in range(ic, ig + 1):
        values[i] = bar_m.at(x[i])
    spec = MacroSpec(beta=params.beta, mu_minus=m_glue, mu_plus=mu0)
    span = x[-1] - x_glue
    for i in range(ig + 1, grid.n_points):
        values[i] = solve_macro_profile(spec, (x[i] - x_glue) / span)
    values[-1] = mu0
    values[: ic + 1] = -values[ic:][::-1]
    return Profile(grid=grid, values=antisymmetrize(values), symmetry="antisymmetric")


def apply_H(params: ThermoParams, grid: GridSpec, m: Profile, j: float) -> Profile:
    """Auxiliary field h(x) = -j*eps*int_0^x dy/chi(m(y)), h(0) = 0.

    Cumulative trapezoid from the center node outward; antisymmetric
    whenever m is (the integrand is even in m).
    """
    chi = mobility(params, m.values)
    if np.min(chi) < _CHI_FLOOR:
        raise MobilityDegeneracyError(
            f"mobility dropped to {np.min(chi):.3e}; field integral degenerate"
        )
    f = 1.0 / chi
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (f[1:] + f[:-1]) * grid.dx)])
    h = -j * grid.epsilon * (cum - cum[grid.center])
    if m.is_antisymmetric:
        return Profile(grid=grid, values=antisymmetrize(h), symmetry="antisymmetric")
    return Profile(grid=grid, values=h)


def seed_current(params: ThermoParams, mu0: float, m_glue: float) -> float:
    """Current carried by the seed: g(mu0) - g(m_glue) > 0."""
    if not params.m_star < mu0 < m_glue <= params.m_beta + 1e-9:
        raise DomainError(
            f"need m_star < mu0 < m_glue <= m_beta, got mu0={mu0}, m_glue={m_glue}"
        )
    return transport_potential(params.beta, mu0) - transport_potential(
        params.beta, m_glue
    )


def seed_delta(params: ThermoParams, grid: GridSpec) -> float:
    """Diagnostic gap m_beta - mbar(1/(2 sqrt(eps))) fixed by the tail."""
    bar_m = cached_instanton(params.beta, default_half_length(grid.epsilon), grid.dx)
    return params.m_beta - bar_m.at(0.5 * np.sqrt(grid.half_length))
