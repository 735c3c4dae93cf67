import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import uphill as up
from uphill.newton import (
    SolverConfig,
    alpha_norm,
    fixed_point_residual,
    inner_solve,
    local_current,
)
from uphill.seed import apply_H, build_m0

from conftest import random_antisymmetric


class TestSolverConfig:
    def test_defaults_valid(self):
        SolverConfig()

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            SolverConfig(inner_tol=0.0)
        with pytest.raises(ValueError):
            SolverConfig(max_outer=0)
        with pytest.raises(ValueError):
            SolverConfig(alpha=-1.0)


class TestAlphaNorm:
    def test_weight_one_at_center(self, grid40):
        v = np.zeros(grid40.n_points)
        v[grid40.center] = 3.0
        assert alpha_norm(grid40, up.Profile(grid=grid40, values=v), 1.0) == 3.0

    def test_edge_weight(self, grid40):
        v = np.zeros(grid40.n_points)
        v[-1] = 1.0
        # weight e^{-alpha * eps * (1/eps)} = e^{-alpha} at the boundary
        assert alpha_norm(grid40, up.Profile(grid=grid40, values=v), 1.0) == (
            pytest.approx(np.exp(-1.0), abs=1e-15)
        )

    @given(seed=st.integers(0, 2**31), alpha=st.floats(0.1, 4.0))
    @settings(max_examples=25, deadline=None)
    def test_equivalent_to_sup_norm(self, seed, alpha):
        grid = up.build_grid(1 / 5, 0.25)
        rng = np.random.default_rng(seed)
        f = up.Profile(grid=grid, values=rng.standard_normal(grid.n_points))
        na = alpha_norm(grid, f, alpha)
        assert na <= f.sup_norm() + 1e-15
        assert f.sup_norm() <= np.exp(alpha) * na + 1e-12

    def test_alpha_positive(self, grid40):
        f = up.Profile(grid=grid40, values=np.zeros(grid40.n_points))
        with pytest.raises(ValueError):
            alpha_norm(grid40, f, 0.0)


class TestInnerSolve:
    def test_converged_input_is_noop(self, params, grid40, kernel40, solved40):
        m, h, _ = solved40
        out, hist = inner_solve(params, kernel40, grid40, m, h, SolverConfig())
        assert hist == []
        assert np.array_equal(out.values, m.values)

    def test_quadratic_correction_decay(self, params, grid40, kernel40, seed_j):
        m0 = build_m0(params, grid40, kernel40, 0.6)
        h0 = apply_H(params, grid40, m0, seed_j)
        m, hist = inner_solve(params, kernel40, grid40, m0, h0, SolverConfig())
        assert len(hist) >= 3
        assert fixed_point_residual(params, kernel40, m, h0) < 1e-12
        for prev, cur in zip(hist, hist[1:]):
            if prev >= 1e-7:
                assert cur <= 10.0 * prev**2

    def test_iteration_cap(self, params, grid40, kernel40, seed_j):
        m0 = build_m0(params, grid40, kernel40, 0.6)
        h0 = apply_H(params, grid40, m0, seed_j)
        with pytest.raises(up.IterationLimitError):
            inner_solve(params, kernel40, grid40, m0, h0, SolverConfig(max_inner=1))


class TestOuterSolve:
    def test_residual_and_consistency(self, solved40):
        _, _, report = solved40
        assert report.residual < 1e-8
        assert report.h_consistency < 1e-10

    def test_contraction_diagnostics(self, solved40):
        _, _, report = solved40
        assert 0.0 < report.rho_estimate < 1.0
        assert 0.0 < report.gamma < 1.0
        assert np.isfinite(report.tau_estimate)
        assert report.n_outer >= 2

    def test_boundary_drift_small(self, solved40):
        _, _, report = solved40
        assert abs(report.mu_final - 0.6) < 0.05

    def test_profile_shape(self, params, solved40):
        m, h, _ = solved40
        assert m.symmetry == "antisymmetric"
        # on the right half: rise through the interface to a single
        # interior bump overshooting the boundary value, then decay
        v = m.values[m.grid.center :]
        imax = int(np.argmax(v))
        assert v[imax] > v[-1]
        assert 0 < imax < len(v) - 1
        assert np.all(np.diff(v[: imax + 1]) > -1e-14)
        assert np.all(np.diff(v[imax:]) < 1e-14)
        # field decreases monotonically across the sample
        assert np.all(np.diff(h.values) < 0)

    def test_zero_current_recovers_interface(self, params, grid40, kernel40):
        m, h, report = up.outer_solve(params, kernel40, grid40, 0.6, 0.0)
        assert np.max(np.abs(h.values)) == 0.0
        assert report.residual < 1e-12
        # without a driving field the profile relaxes to the zero-current
        # interface: monotone, boundary at the well bottom
        assert report.mu_final == pytest.approx(params.m_beta, abs=1e-6)
        assert np.all(np.diff(m.values) >= -1e-15)

    def test_negative_current_rejected(self, params, grid40, kernel40):
        with pytest.raises(ValueError):
            up.outer_solve(params, kernel40, grid40, 0.6, -0.01)

    def test_report_serializable(self, solved40):
        import json

        _, _, report = solved40
        s = json.dumps(report.as_dict(), sort_keys=True)
        assert "rho_estimate" in s


class TestLocalCurrent:
    def test_constant_near_expected_value(self, params, kernel40, solved40, seed_j):
        m, _, report = solved40
        cur = local_current(params, kernel40, m)
        x = m.grid.nodes()
        interior = np.abs(x) <= m.grid.half_length - 2.0
        vals = cur.values[interior] / m.grid.epsilon
        assert np.max(np.abs(vals - report.j)) <= 0.02 * abs(report.j)

    def test_zero_for_interface(self, params, instanton20):
        kernel = up.build_kernel(instanton20.grid)
        cur = local_current(params, kernel, instanton20)
        x = instanton20.grid.nodes()
        interior = np.abs(x) <= 18.0
        assert np.max(np.abs(cur.values[interior])) < 1e-5

    def test_even_symmetry(self, params, kernel40, solved40):
        m, _, _ = solved40
        cur = local_current(params, kernel40, m)
        assert np.max(np.abs(cur.values - cur.values[::-1])) < 1e-10
