"""Scalar mean-field thermodynamics and the nonlocal free-energy functional.

Below the critical temperature (beta > 1) the scalar free energy
phi(m) = -m^2/2 - S(m)/beta is a double well with minima at +-m_beta,
where m_beta solves m = tanh(beta*m), and spinodal points at
+-m_star = +-sqrt(1 - 1/beta) where the mobility chi(m) = beta*(1-m^2)
crosses 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatchError
from .grid import KernelTable, Profile, antisymmetrize, convolve

logger = logging.getLogger(__name__)

_ATANH_GUARD = 1e-14


def solve_mbeta(beta: float) -> float:
    """Positive root of m = tanh(beta*m), bisection safeguarded by Newton."""
    if beta <= 1.0:
        raise DomainError(f"no positive root of m = tanh(beta*m) for beta={beta} <= 1")
    lo, hi = 1e-16, 1.0
    f = lambda m: m - np.tanh(beta * m)
    m = np.sqrt(3.0 * (beta - 1.0) / beta**3)  # small-root expansion as a seed
    m = min(max(m, lo), hi)
    for _ in range(200):
        fm = f(m)
        if abs(fm) < 1e-16 or hi - lo < 1e-16:
            break
        if fm > 0:
            hi = m
        else:
            lo = m
        dfm = 1.0 - beta / np.cosh(beta * m) ** 2
        step = m - fm / dfm if dfm != 0 else None
        m = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
    return float(m)


def spinodal(beta: float) -> float:
    """Spinodal magnetization sqrt(1 - 1/beta)."""
    if beta <= 1.0:
        raise DomainError(f"spinodal undefined for beta={beta} <= 1")
    return float(np.sqrt(1.0 - 1.0 / beta))


@dataclass(frozen=True)
class ThermoParams:
    beta: float
    m_beta: float
    m_star: float

    @classmethod
    def from_beta(cls, beta: float) -> "ThermoParams":
        return cls(beta=float(beta), m_beta=solve_mbeta(beta), m_star=spinodal(beta))


def _check_unit_interval(m, strict: bool = False):
    m = np.asarray(m, dtype=float)
    bound = np.max(np.abs(m)) if m.size else 0.0
    if strict and bound >= 1.0:
        raise DomainError("magnetization must satisfy |m| < 1 strictly")
    if bound > 1.0:
        raise DomainError(f"magnetization magnitude {bound} exceeds 1")
    return m


def entropy(m):
    """Binary spin entropy; continuous limits 0 at m = +-1."""
    m = _check_unit_interval(m)
    p = (1.0 + m) / 2.0
    q = (1.0 - m) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -np.where(p > 0, p * np.log(p), 0.0) - np.where(q > 0, q * np.log(q), 0.0)
    return s if s.ndim else float(s)


def phi_beta(params: ThermoParams, m):
    """Local double-well free energy -m^2/2 - S(m)/beta."""
    m = _check_unit_interval(m)
    out = -0.5 * m**2 - entropy(m) / params.beta
    return out if np.ndim(out) else float(out)


def mobility(params: ThermoParams, m):
    """Spin mobility chi(m) = beta*(1 - m^2)."""
    m = _check_unit_interval(m)
    out = params.beta * (1.0 - m**2)
    return out if np.ndim(out) else float(out)


def guarded_arctanh(m):
    """arctanh with inputs clamped 1e-14 away from +-1; exact +-1 is an error."""
    m = np.asarray(m, dtype=float)
    if np.any(np.abs(m) >= 1.0):
        raise DomainError("arctanh singular at |m| = 1")
    limit = 1.0 - _ATANH_GUARD
    if np.any(np.abs(m) > limit):
        logger.warning("arctanh argument within 1e-14 of +-1; clamping")
        m = np.clip(m, -limit, limit)
    return np.arctanh(m)


def lp_free_energy(
    params: ThermoParams,
    kernel: KernelTable,
    m: Profile,
    reservoirs: tuple[float, float],
) -> float:
    """Nonlocal free energy of a profile coupled to boundary reservoirs.

    F[m] = int phi(m) + (1/4) iint J(x,y)[m(x)-m(y)]^2
         + (1/2) int [b_l(x)(m(x)-r_l)^2 + b_r(x)(m(x)-r_r)^2],
    all by trapezoidal quadrature on the grid.
    """
    vals = _check_unit_interval(m.values)
    res_l, res_r = reservoirs
    w = m.grid.weights()
    local = float(np.sum(w * phi_beta(params, vals)))
    # expand [m(x)-m(y)]^2 and reuse the banded convolution (interior only)
    conv_m = convolve(kernel, m, 0.0, 0.0).values
    m2 = Profile(grid=m.grid, values=vals**2)
    conv_m2 = convolve(kernel, m2, 0.0, 0.0).values
    ones = Profile(grid=m.grid, values=np.ones_like(vals))
    row_mass = convolve(kernel, ones, 0.0, 0.0).values
    interaction = 0.25 * float(
        np.sum(w * (vals**2 * row_mass - 2.0 * vals * conv_m + conv_m2))
    )
    reservoir = 0.5 * float(
        np.sum(
            w
            * (
                kernel.b_left * (vals - res_l) ** 2
                + kernel.b_right * (vals - res_r) ** 2
            )
        )
    )
    return local + interaction + reservoir


def first_variation(
    params: ThermoParams,
    kernel: KernelTable,
    m: Profile,
    reservoirs: tuple[float, float],
) -> Profile:
    """Functional derivative dF/dm = arctanh(m)/beta - J*m."""
    if m.grid != kernel.grid:
        raise GridMismatchError("profile and kernel live on different grids")
    vals = _check_unit_interval(m.values, strict=True)
    conv = convolve(kernel, m, reservoirs[0], reservoirs[1]).values
    out = guarded_arctanh(vals) / params.beta - conv
    symmetry = (
        "antisymmetric"
        if m.is_antisymmetric and reservoirs[0] == -reservoirs[1]
        else "none"
    )
    if symmetry == "antisymmetric":
        out = antisymmetrize(out)
    return Profile(grid=m.grid, values=out, symmetry=symmetry)
