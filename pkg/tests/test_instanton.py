import numpy as np
import pytest

import uphill as up
from uphill.errors import TailDiagnosticError
from uphill.instanton import cached_instanton, default_half_length, tail_rate


class TestSolveInstanton:
    def test_fixed_point_residual(self, params, instanton20):
        kernel = up.build_kernel(instanton20.grid)
        mb = params.m_beta
        conv = up.convolve(kernel, instanton20, -mb, mb)
        res = np.max(np.abs(instanton20.values - np.tanh(params.beta * conv.values)))
        assert res < 1e-8

    def test_antisymmetric_and_centered(self, instanton20):
        v = instanton20.values
        assert v[instanton20.grid.center] == 0.0
        assert np.max(np.abs(v + v[::-1])) < 1e-13

    def test_monotone_nondecreasing(self, params, instanton20):
        d = np.diff(instanton20.values)
        # non-decreasing up to one ulp of m_beta (the tail saturates at
        # machine precision well inside the truncated domain)
        assert np.min(d) >= -2e-16
        # strictly increasing wherever the gap to the asymptote is resolvable
        gap = params.m_beta - np.abs(instanton20.values[:-1])
        assert np.all(d[gap > 1e-12] > 0.0)

    def test_asymptotes(self, params, instanton20):
        assert abs(instanton20.values[-1] - params.m_beta) < 1e-12
        assert abs(instanton20.at(np.sqrt(40.0)) - params.m_beta) < 1e-6

    def test_bounded_by_well_bottom(self, params, instanton20):
        assert instanton20.sup_norm() <= params.m_beta + 1e-12

    def test_half_length_snapped_to_node(self, params):
        m = up.solve_instanton(params, 20.02, 0.05, tol=1e-10)
        assert m.grid.half_length == pytest.approx(20.05, abs=1e-12)

    def test_too_short_domain_rejected(self, params):
        with pytest.raises(ValueError):
            up.solve_instanton(params, 3.0, 0.05)

    def test_truncation_insensitivity(self, params, instanton20):
        # values near the center do not feel the half-length
        m25 = cached_instanton(params.beta, 25.0, 0.05)
        for x in (0.5, 1.0, 3.0, 6.0):
            assert m25.at(x) == pytest.approx(instanton20.at(x), abs=1e-11)

    def test_cache_hit_is_same_object(self, params):
        a = cached_instanton(params.beta, 20.0, 0.05)
        b = cached_instanton(params.beta, 20.0, 0.05)
        assert a is b

    def test_default_half_length(self):
        assert default_half_length(1 / 40) == 20.0
        assert default_half_length(1 / 900) == 32.0


class TestTailRate:
    def test_rate_near_characteristic_root(self, params, instanton20):
        # root a of chi_bar * integral of J~(r) e^{a r} = 1, chi_bar = beta(1 - m_beta^2)
        a = tail_rate(instanton20, params)
        assert a == pytest.approx(3.0, abs=0.05)

    def test_rate_stable_under_longer_domain(self, params, instanton20):
        m25 = cached_instanton(params.beta, 25.0, 0.05)
        a20 = tail_rate(instanton20, params)
        a25 = tail_rate(m25, params)
        assert a25 == pytest.approx(a20, rel=1e-3)

    def test_short_profile_rejected(self, params):
        m = up.solve_instanton(params, 5.0, 0.05)
        with pytest.raises(TailDiagnosticError):
            tail_rate(m, params, gap_window=(1e-12, 1e-11))
