import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from chiquad.mori import (
    MoriWindow,
    log_psi,
    psi,
    psi_mode,
    solve_window,
    transform,
    trimming_bound,
)
from chiquad.specfun import chi2_cdf, chi2_sf, chi_scaled_pdf
from chiquad.trapz import discarded_mass


class TestTransform:
    def test_origin(self):
        p = transform(0.0)
        assert p.x == pytest.approx(math.exp(-1), rel=1e-15)
        assert p.dxdy == pytest.approx(1.5 * math.exp(-1), rel=1e-15)

    def test_large_y(self):
        p = transform(100.0)
        assert p.x == pytest.approx(math.exp(50), rel=1e-14)
        assert p.dxdy == pytest.approx(math.exp(50) / 2, rel=1e-14)

    def test_far_left_underflows_cleanly(self):
        p = transform(-800.0)
        assert p.x == 0.0 and p.dxdy == 0.0

    def test_non_finite(self):
        with pytest.raises(ValueError):
            transform(math.nan)

    def test_monotone_pairs(self):
        rng = np.random.default_rng(0)
        ys = rng.uniform(-6, 6, size=(10_000, 2))
        for y1, y2 in ys:
            if y1 < y2:
                assert transform(y1).x < transform(y2).x
            elif y2 < y1:
                assert transform(y2).x < transform(y1).x

    @given(st.floats(-5, 5))
    def test_round_trip(self, y):
        x = transform(y).x
        lo, hi = -10.0, 10.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if transform(mid).x < x:
                lo = mid
            else:
                hi = mid
        assert abs(0.5 * (lo + hi) - y) <= 1e-10


class TestPsi:
    @pytest.mark.parametrize("nu", [1, 2, 3, 10, 1000])
    def test_mode_location(self, nu):
        # independent root of d/dy log psi = nu s (1 - x^2) - e^{-y} / s, s = 1/2 + e^{-y}
        def dlog(y):
            s = mpmath.mpf(0.5) + mpmath.exp(-y)
            x2 = mpmath.exp(y - 2 * mpmath.exp(-y))
            return nu * s * (1 - x2) - mpmath.exp(-y) / s

        ref = float(mpmath.findroot(dlog, 0.8))
        ys = np.arange(-3, 4, 0.001)
        grid_max = ys[np.argmax([psi(nu, y) for y in ys])]
        assert abs(grid_max - ref) <= 0.001
        ystar = psi_mode(nu)
        assert ystar == pytest.approx(ref, abs=1e-10)
        assert 0.5 <= ystar <= 1.2
        assert psi(nu, ystar) >= psi(nu, ystar - 0.01)
        assert psi(nu, ystar) >= psi(nu, ystar + 0.01)

    def test_left_underflow(self):
        assert psi(2, -40.0) == 0.0

    def test_compositional(self):
        p = transform(0.5)
        assert psi(3, 0.5) == pytest.approx(chi_scaled_pdf(3, p.x) * p.dxdy, rel=1e-14)

    @pytest.mark.parametrize("nu", [1, 2, 3, 5, 10, 100, 1000])
    def test_unimodal_both_sides(self, nu):
        ystar = psi_mode(nu)
        ts = np.linspace(0, 30, 3001)
        for side in (-1, 1):
            vals = [log_psi(nu, ystar + side * t) for t in ts]
            assert all(b <= a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("nu", [1, 4, 50])
    def test_integrates_to_one(self, nu):
        ys = np.linspace(-6, 8, 4001)
        vals = np.array([psi(nu, y) for y in ys])
        assert np.sum(vals) * (ys[1] - ys[0]) == pytest.approx(1.0, abs=1e-12)


class TestTrimmingBound:
    def test_exhaustive_window(self):
        assert trimming_bound(2, -50.0, 100.0) <= 1e-300

    def test_degenerate_window(self):
        assert trimming_bound(2, psi_mode(2), 1e-6) == pytest.approx(1.0, abs=1e-5)

    def test_simpson_tails(self, simpson_oracle):
        nu, y, d = 5, -2.0, 4.0
        xl, xr = transform(y).x, transform(y + d).x
        dens = lambda t: stats.chi2.pdf(t, nu)
        left = simpson_oracle(dens, 0.0, nu * xl * xl, 20_000)
        right = simpson_oracle(dens, nu * xr * xr, nu * xr * xr + 400.0, 400_000)
        assert trimming_bound(nu, y, d) == pytest.approx(left + right, abs=1e-10)

    def test_bad_d(self):
        with pytest.raises(ValueError):
            trimming_bound(2, 0.0, 0.0)

    @given(st.integers(1, 100), st.floats(-4, 0.5), st.floats(0.1, 8), st.floats(1e-3, 2))
    def test_decreasing_in_d(self, nu, y, d, dd):
        a, b = trimming_bound(nu, y, d), trimming_bound(nu, y, d + dd)
        assert b <= a
        # strict whenever the right tail being removed is visible in a's last digit
        right = chi2_sf(nu, nu * transform(y + d).x ** 2)
        if right > 1e-15 * a and a < 0.99:
            assert b < a


class TestSolveWindow:
    def test_target_met(self):
        w = solve_window(2, 1e-20)
        assert isinstance(w, MoriWindow)
        assert trimming_bound(2, w.y_lo, w.d) <= 1.001e-20
        assert w.bound == pytest.approx(
            chi2_cdf(2, 2 * transform(w.y_lo).x ** 2) + chi2_sf(2, 2 * transform(w.y_hi).x ** 2),
            abs=1e-15,
        )

    def test_nu1_wider(self):
        assert solve_window(1, 1e-20).d > solve_window(2, 1e-20).d

    @pytest.mark.parametrize("nu", [1, 2, 5, 100])
    def test_balanced_edges(self, nu):
        w = solve_window(nu, 1e-20)
        assert log_psi(nu, w.y_lo) == pytest.approx(log_psi(nu, w.y_hi), abs=1e-6)

    @pytest.mark.parametrize("nu", [1, 2, 3, 10, 1000, 10**6])
    @pytest.mark.parametrize("target", [1e-6, 1e-20])
    def test_contains_mode(self, nu, target):
        w = solve_window(nu, target)
        assert w.contains_mode()
        assert w.bound <= target
        assert w.bound >= 0.5 * target  # not wastefully wide

    @pytest.mark.parametrize("target", [0.0, 1.0, -1e-3])
    def test_bad_target(self, target):
        with pytest.raises(ValueError):
            solve_window(2, target)

    def test_subnormal_target(self):
        w = solve_window(1, 1e-320)
        assert 0.0 < w.bound <= 1e-320 and w.contains_mode()

    def test_large_nu_mode_limit(self):
        # as nu grows the mode tends to the root of y/2 = e^{-y}
        assert psi_mode(10**6) == pytest.approx(0.8526055020137255, abs=1e-5)


@pytest.mark.parametrize("nu", [1, 2, 3, 5, 10])
@pytest.mark.parametrize("h", [0.05, 0.1])
def test_discarded_mass_within_bound(nu, h):
    w = solve_window(nu, 1e-8)
    n = math.ceil(w.d / h) + 1
    span = (n - 1) * h
    assert discarded_mass(nu, w.y_lo, h, n) <= trimming_bound(nu, w.y_lo, span)
