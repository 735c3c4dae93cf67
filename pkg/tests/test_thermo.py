import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import uphill as up
from uphill.errors import DomainError
from uphill.thermo import entropy, first_variation, lp_free_energy, mobility, phi_beta


class TestEntropy:
    def test_maximum_at_zero(self):
        assert entropy(0.0) == pytest.approx(np.log(2), abs=1e-14)

    def test_pure_states(self):
        assert entropy(1.0) == 0.0
        assert entropy(-1.0) == 0.0

    def test_half(self):
        # -0.75 log 0.75 - 0.25 log 0.25
        assert entropy(0.5) == pytest.approx(0.562335, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            entropy(1.2)

    @given(st.floats(-1.0, 1.0))
    def test_even_and_bounded(self, m):
        s = entropy(m)
        assert 0.0 <= s <= np.log(2) + 1e-15
        assert s == pytest.approx(entropy(-m), abs=1e-12)


class TestScalarFunctions:
    def test_phi_at_zero(self, params):
        assert phi_beta(params, 0.0) == pytest.approx(-0.8 * np.log(2), abs=1e-12)

    def test_phi_at_minimum(self, params):
        assert phi_beta(params, params.m_beta) == pytest.approx(-0.583201, abs=1e-5)
        # stationarity of the well bottom
        d = 1e-7
        grad = (phi_beta(params, params.m_beta + d) - phi_beta(params, params.m_beta - d)) / (2 * d)
        assert abs(grad) < 1e-6

    def test_phi_even(self, params):
        for m in (0.1, 0.35, 0.77):
            assert phi_beta(params, m) == pytest.approx(phi_beta(params, -m), abs=1e-14)

    def test_phi_derivative_matches_finite_difference(self, params):
        d = 1e-6
        for m in (-0.6, -0.2, 0.3, 0.55):
            exact = -m + np.arctanh(m) / params.beta
            fd = (phi_beta(params, m + d) - phi_beta(params, m - d)) / (2 * d)
            assert fd == pytest.approx(exact, rel=1e-6)

    def test_mobility(self, params):
        assert mobility(params, 0.0) == 1.25
        assert mobility(params, 1.0) == 0.0
        assert mobility(params, -1.0) == 0.0
        assert mobility(params, params.m_star) == pytest.approx(1.0, abs=1e-14)


class TestMeanFieldConstants:
    def test_mbeta_reference_values(self):
        assert up.solve_mbeta(1.25) == pytest.approx(0.710412, abs=5e-6)
        assert up.solve_mbeta(2.0) == pytest.approx(0.957504, abs=1e-6)

    def test_mbeta_is_fixed_point(self):
        for beta in (1.05, 1.25, 2.0, 5.0):
            m = up.solve_mbeta(beta)
            assert abs(m - np.tanh(beta * m)) < 1e-12

    def test_mbeta_vanishes_at_bifurcation(self):
        assert up.solve_mbeta(1.0 + 1e-8) < 1e-3

    def test_mbeta_domain(self):
        with pytest.raises(DomainError):
            up.solve_mbeta(0.9)

    def test_spinodal(self):
        assert up.spinodal(1.25) == pytest.approx(0.447214, abs=1e-6)
        assert up.spinodal(2.0) == pytest.approx(np.sqrt(0.5), abs=1e-12)
        with pytest.raises(DomainError):
            up.spinodal(1.0)

    def test_ordering(self, params):
        assert 0 < params.m_star < params.m_beta < 1


class TestFreeEnergy:
    def test_constant_zero(self, params, grid40, kernel40):
        m = up.Profile(grid=grid40, values=np.zeros(grid40.n_points))
        f = lp_free_energy(params, kernel40, m, (0.0, 0.0))
        assert f == pytest.approx(80 * phi_beta(params, 0.0), abs=0.01)

    def test_constant_well_bottom(self, params, grid40, kernel40):
        mb = params.m_beta
        m = up.Profile(grid=grid40, values=np.full(grid40.n_points, mb))
        f = lp_free_energy(params, kernel40, m, (mb, mb))
        assert f == pytest.approx(80 * phi_beta(params, mb), abs=0.01)
        assert f == pytest.approx(-46.656, abs=0.01)

    def test_spin_flip_symmetry(self, params, grid40, kernel40):
        rng = np.random.default_rng(3)
        vals = 0.8 * np.tanh(rng.standard_normal(grid40.n_points))
        m = up.Profile(grid=grid40, values=vals)
        mneg = up.Profile(grid=grid40, values=-vals)
        f1 = lp_free_energy(params, kernel40, m, (-0.3, 0.5))
        f2 = lp_free_energy(params, kernel40, mneg, (0.3, -0.5))
        assert f1 == pytest.approx(f2, rel=1e-12)

    def test_domain_error(self, params, grid40, kernel40):
        vals = np.zeros(grid40.n_points)
        vals[3] = 1.5
        with pytest.raises(DomainError):
            lp_free_energy(params, kernel40, up.Profile(grid=grid40, values=vals), (0, 0))


class TestFirstVariation:
    def test_constant(self, params, grid40, kernel40):
        c = 0.4
        m = up.Profile(grid=grid40, values=np.full(grid40.n_points, c))
        fv = first_variation(params, kernel40, m, (c, c))
        expected = np.arctanh(c) / params.beta - c
        assert np.max(np.abs(fv.values - expected)) < 1e-12

    def test_well_bottom_is_critical_point(self, params, grid40, kernel40):
        mb = params.m_beta
        m = up.Profile(grid=grid40, values=np.full(grid40.n_points, mb))
        fv = first_variation(params, kernel40, m, (mb, mb))
        assert np.max(np.abs(fv.values)) < 1e-10

    def test_instanton_is_critical_point(self, params, instanton20):
        kernel = up.build_kernel(instanton20.grid)
        fv = first_variation(
            params, kernel, instanton20, (-params.m_beta, params.m_beta)
        )
        assert np.max(np.abs(fv.values)) < 1e-6

    def test_matches_finite_difference_of_free_energy(self, params):
        grid = up.build_grid(1 / 10, 0.1)
        kernel = up.build_kernel(grid)
        rng = np.random.default_rng(11)
        vals = 0.5 * np.tanh(rng.standard_normal(grid.n_points))
        m = up.Profile(grid=grid, values=vals)
        res = (-0.3, 0.3)
        fv = first_variation(params, kernel, m, res).values
        w = grid.weights()
        d = 1e-6
        for i in rng.choice(grid.n_points, size=10, replace=False):
            pert = vals.copy()
            pert[i] += d
            f_plus = lp_free_energy(params, kernel, up.Profile(grid=grid, values=pert), res)
            pert[i] -= 2 * d
            f_minus = lp_free_energy(params, kernel, up.Profile(grid=grid, values=pert), res)
            fd = (f_plus - f_minus) / (2 * d) / w[i]
            assert fd == pytest.approx(fv[i], rel=1e-3, abs=1e-9)

    def test_singularity_rejected(self, params, grid40, kernel40):
        vals = np.zeros(grid40.n_points)
        vals[0] = -1.0
        with pytest.raises(DomainError):
            first_variation(params, kernel40, up.Profile(grid=grid40, values=vals), (0, 0))
