"""Macroscopic transport profile on [0, 1] via its cubic first integral.

Outside the spinodal region the stationary transport equation
j = -(1 - chi(M)) M' integrates to g(M(x)) = g(mu_minus) + j*x with
g(M) = (beta-1) M - (beta/3) M^3, so the profile is the unique root of a
cubic, strictly decreasing when the current is positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UphillError
from .thermo import solve_mbeta, spinodal


def transport_potential(beta: float, m) -> float:
    """First integral g(M) = (beta-1) M - (beta/3) M^3."""
    m = np.asarray(m, dtype=float)
    out = (beta - 1.0) * m - (beta / 3.0) * m**3
    return out if out.ndim else float(out)


def _check_metastable(beta: float, value: float, name: str):
    m_star = spinodal(beta)
    m_beta = solve_mbeta(beta)
    # slack admits boundary data quoted at the precision of m_beta itself
    if not m_star < value <= m_beta + 1e-6:
        raise DomainError(
            f"{name}={value} outside the metastable interval "
            f"({m_star:.6f}, {m_beta:.6f}] at beta={beta}"
        )


def macro_current(beta: float, mu_minus: float, mu_plus: float) -> float:
    """Current fixed by the boundary values: g(mu_plus) - g(mu_minus)."""
    _check_metastable(beta, mu_minus, "mu_minus")
    _check_metastable(beta, mu_plus, "mu_plus")
    return transport_potential(beta, mu_plus) - transport_potential(beta, mu_minus)


@dataclass(frozen=True)
class MacroSpec:
    """Boundary data for the macroscopic problem; j_M is derived."""

    beta: float
    mu_minus: float
    mu_plus: float
    j_M: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "j_M", macro_current(self.beta, self.mu_minus, self.mu_plus)
        )


def solve_macro_profile(spec: MacroSpec, x: float) -> float:
    """Profile value M(x): the root of g(M) = g(mu_minus) + j_M * x.

    Safeguarded bisection on [mu_plus, mu_minus] to 1e-12; g is strictly
    monotone there because the metastable interval excludes the spinodal.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"macroscopic coordinate x={x} outside [0, 1]")
    if spec.mu_minus == spec.mu_plus:
        return spec.mu_minus
    lo, hi = min(spec.mu_plus, spec.mu_minus), max(spec.mu_plus, spec.mu_minus)
    target = transport_potential(spec.beta, spec.mu_minus) + spec.j_M * x
    g = lambda m: transport_potential(spec.beta, m) - target
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    if glo * ghi > 0:
        raise UphillError(
            f"cubic first integral not bracketed on [{lo}, {hi}] at x={x}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0 or hi - lo < 1e-12:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)
