import numpy as np
import pytest

import uphill as up
from uphill.seed import glue_value, seed_current

BETA = 1.25
DX = 0.05


@pytest.fixture(scope="session")
def params():
    return up.ThermoParams.from_beta(BETA)


@pytest.fixture(scope="session")
def grid40():
    return up.build_grid(1.0 / 40.0, DX)


@pytest.fixture(scope="session")
def kernel40(grid40):
    return up.build_kernel(grid40)


@pytest.fixture(scope="session")
def instanton20(params):
    from uphill.instanton import cached_instanton

    return cached_instanton(BETA, 20.0, DX)


@pytest.fixture(scope="session")
def seed_j(params, grid40):
    return seed_current(params, 0.6, glue_value(params, grid40))


@pytest.fixture(scope="session")
def solved40(params, grid40, kernel40, seed_j):
    """Converged bump at beta=1.25, eps=1/40, mu0=0.6, seed current."""
    m, h, report = up.outer_solve(params, kernel40, grid40, 0.6, seed_j)
    return m, h, report


def random_antisymmetric(grid, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(grid.n_points)
    v = 0.5 * (v - v[::-1])
    v[grid.center] = 0.0
    return up.Profile(grid=grid, values=v, symmetry="antisymmetric")
