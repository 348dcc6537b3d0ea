import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chiquad.scenario import (
    NORMAL_975,
    ScenarioSpec,
    WeightedMomentSpec,
    exact_value,
    t_interval_integrand,
    weighted_moment_to_standard,
)
from chiquad.specfun import normal_cdf
from chiquad.trapz import simple_procedure


class TestTIntervalIntegrand:
    def test_t_crit(self):
        assert ScenarioSpec(1, 0.05).t_crit == pytest.approx(12.706204736174698, rel=1e-13)

    def test_normal_limit(self):
        a = t_interval_integrand(ScenarioSpec(1, 0.05, t_override=NORMAL_975))
        assert a(1.0) == pytest.approx(0.95, abs=1e-15)
        assert a(1.0) == pytest.approx(2 * normal_cdf(NORMAL_975) - 1, abs=1e-15)

    @pytest.mark.parametrize("nu", [1, 2, 30])
    def test_zero_at_origin(self, nu):
        assert t_interval_integrand(ScenarioSpec(nu, 0.1))(0.0) == 0.0

    def test_monotone_pairs(self):
        a = t_interval_integrand(ScenarioSpec(3, 0.05))
        rng = np.random.default_rng(1)
        for x1, x2 in np.sort(rng.uniform(0, 1.5, size=(10_000, 2)), axis=1):
            if x1 < x2:
                assert a(x1) <= a(x2)
                assert 0.0 < a(x2) <= 1.0

    @given(st.integers(1, 1000), st.sampled_from([0.1, 0.05, 0.02]), st.floats(0, 50))
    def test_matches_normal_cdf_form(self, nu, alpha, x):
        spec = ScenarioSpec(nu, alpha)
        ref = 2 * normal_cdf(spec.t_crit * x) - 1
        assert t_interval_integrand(spec)(x) == pytest.approx(ref, abs=1e-15)

    def test_exact_values(self):
        assert exact_value(ScenarioSpec(4, 0.10)) == 0.90
        assert exact_value(ScenarioSpec(4, 0.05)) == 0.95

    def test_curve_ordering(self):
        curves = [
            t_interval_integrand(ScenarioSpec(1, 0.05)),
            t_interval_integrand(ScenarioSpec(2, 0.05)),
            t_interval_integrand(ScenarioSpec(1, 0.05, t_override=NORMAL_975)),
        ]
        for x in np.linspace(0.001, 3, 500):
            v = [c(x) for c in curves]
            assert v[0] >= v[1] >= v[2]
            if v[2] < 1.0:
                assert v[1] > v[2]

    @pytest.mark.parametrize("nu, alpha", [(0, 0.05), (2, 0.0), (2, 1.0)])
    def test_invalid(self, nu, alpha):
        with pytest.raises(ValueError):
            ScenarioSpec(nu, alpha)

    @pytest.mark.parametrize("nu", [2, 5])
    def test_procedure_reproduces_exact(self, nu):
        spec = ScenarioSpec(nu, 0.05)
        res = simple_procedure(nu, t_interval_integrand(spec), 1e-14)
        assert abs(res.value - exact_value(spec)) <= 1e-14


class TestWeightedMoment:
    def test_scale(self):
        assert WeightedMomentSpec(3, 3, lambda x: 1.0).scale == pytest.approx(1 / math.sqrt(2), rel=1e-15)

    def test_second_moment(self):
        nu, a, pref = weighted_moment_to_standard(WeightedMomentSpec(2, 2, lambda x: 1.0))
        assert nu == 4
        assert abs(pref * simple_procedure(nu, a, 1e-15).value - 1.0) <= 1e-12

    def test_chi_mean(self):
        nu, a, pref = weighted_moment_to_standard(WeightedMomentSpec(3, 1, lambda x: 1.0))
        # E[R / sqrt(3)] for R ~ chi_3
        ref = math.sqrt(2 / 3) * math.gamma(2) / math.gamma(1.5)
        assert pref == pytest.approx(ref, rel=1e-12)
        assert abs(pref * simple_procedure(nu, a, 1e-15).value - ref) <= 1e-12

    def test_prefactor_log_space(self):
        # Γ(ν/2) overflows in linear space here
        _, _, pref = weighted_moment_to_standard(WeightedMomentSpec(400, 4, lambda x: 1.0))
        k, v = mpmath.mpf(400), mpmath.mpf(404)
        ref = (2 / k) ** 2 * mpmath.gamma(v / 2) / mpmath.gamma(k / 2)
        assert pref == pytest.approx(float(ref), rel=1e-12)

    @pytest.mark.parametrize("xi", [0, -1, 1.5])
    def test_invalid_xi(self, xi):
        with pytest.raises(ValueError):
            WeightedMomentSpec(2, xi, lambda x: 1.0)
