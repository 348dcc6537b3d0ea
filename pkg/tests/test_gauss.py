import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from chiquad.gauss import generalized_laguerre_rule, legendre_rule


def legendre_moment(k):
    return 0.0 if k % 2 else 2.0 / (k + 1)


def laguerre_moment(alpha, k):
    return math.gamma(alpha + k + 1)


class TestLegendre:
    def test_small_rules(self):
        r1 = legendre_rule(1)
        assert r1.nodes.tolist() == [0.0] and r1.weights.tolist() == pytest.approx([2.0], rel=1e-15)
        r2 = legendre_rule(2)
        assert r2.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15)
        assert r2.weights == pytest.approx([1.0, 1.0], rel=1e-15)

    def test_degree8(self):
        assert abs(legendre_rule(5).integrate(lambda x: x**8) - 2 / 9) <= 1e-13

    @pytest.mark.parametrize("m", [3, 10, 33, 65, 200, 500])
    def test_structure(self, m):
        r = legendre_rule(m)
        assert np.all(np.diff(r.nodes) > 0)
        assert -1 < r.nodes[0] and r.nodes[-1] < 1
        assert np.all(r.weights > 0)
        assert r.weights.sum() == pytest.approx(2.0, rel=1e-13)

    @pytest.mark.parametrize("m", [5, 33, 65])
    def test_against_scipy(self, m):
        x, w = special.roots_legendre(m)
        r = legendre_rule(m)
        assert r.nodes == pytest.approx(x, abs=1e-15)
        assert r.weights == pytest.approx(w, rel=1e-11)

    @pytest.mark.parametrize("m", [0, 501])
    def test_bad_m(self, m):
        with pytest.raises(ValueError):
            legendre_rule(m)


class TestGeneralizedLaguerre:
    def test_one_point(self):
        r = generalized_laguerre_rule(0.0, 1)
        assert r.nodes.tolist() == pytest.approx([1.0]) and r.weights.tolist() == pytest.approx([1.0])

    def test_figure4_nu1(self):
        r = generalized_laguerre_rule(-0.5, 65)
        assert r.weights.sum() == pytest.approx(math.sqrt(math.pi), rel=1e-12)
        assert int(np.sum(r.nodes <= 0.1)) == 2
        assert int(np.sum(r.nodes > 50)) == 30

    def test_figure4_nu2(self):
        r = generalized_laguerre_rule(0.0, 33)
        assert int(np.sum(r.nodes > 50)) == 9

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 0.5, 1.0, 49.0, 499.0])
    @pytest.mark.parametrize("m", [5, 33, 65])
    def test_structure(self, alpha, m):
        r = generalized_laguerre_rule(alpha, m)
        assert np.all(np.diff(r.nodes) > 0) and r.nodes[0] > 0
        assert np.all(r.prob_weights > 0)
        assert r.prob_weights.sum() == pytest.approx(1.0, rel=1e-13)
        assert r.log_mu0 == pytest.approx(math.lgamma(alpha + 1), rel=1e-15)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.5])
    def test_against_scipy(self, alpha):
        x, w = special.roots_genlaguerre(20, alpha)
        r = generalized_laguerre_rule(alpha, 20)
        assert r.nodes == pytest.approx(x, rel=1e-12)
        assert r.weights == pytest.approx(w, rel=1e-9)

    @pytest.mark.parametrize("alpha, m", [(-1.0, 5), (-2.0, 5), (0.0, 0), (0.0, 201)])
    def test_bad_args(self, alpha, m):
        with pytest.raises(ValueError):
            generalized_laguerre_rule(alpha, m)


@pytest.mark.parametrize("m", range(1, 21))
def test_monomial_exactness(m):
    leg = legendre_rule(m)
    for alpha in (-0.5, 0.0, 2.0):
        lag = generalized_laguerre_rule(alpha, m)
        for k in range(2 * m):
            assert leg.integrate(lambda x: x**k) == pytest.approx(legendre_moment(k), rel=1e-11, abs=1e-14)
            assert lag.integrate(lambda x: x**k) == pytest.approx(laguerre_moment(alpha, k), rel=1e-11)


@given(st.integers(1, 15), st.sampled_from([-0.5, 0.0, 0.5, 3.0]), st.integers(0, 2**32 - 1))
def test_random_polynomials(m, alpha, seed):
    rng = np.random.default_rng(seed)
    deg = int(rng.integers(0, 2 * m))
    c = rng.uniform(-1, 1, deg + 1)
    poly = np.polynomial.Polynomial(c)
    exact_leg = sum(ck * legendre_moment(k) for k, ck in enumerate(c))
    exact_lag = sum(ck * laguerre_moment(alpha, k) for k, ck in enumerate(c))
    scale_leg = sum(abs(ck) * legendre_moment(k) for k, ck in enumerate(c))
    scale_lag = sum(abs(ck) * laguerre_moment(alpha, k) for k, ck in enumerate(c))
    assert abs(legendre_rule(m).integrate(poly) - exact_leg) <= 1e-10 * scale_leg
    assert abs(generalized_laguerre_rule(alpha, m).integrate(poly) - exact_lag) <= 1e-10 * scale_lag


@pytest.mark.parametrize("m", [2, 5, 16, 40])
def test_interlacing(m):
    for a, b in ((legendre_rule(m), legendre_rule(m + 1)),
                 (generalized_laguerre_rule(-0.5, m), generalized_laguerre_rule(-0.5, m + 1))):
        assert np.all(b.nodes[:-1] < a.nodes) and np.all(a.nodes < b.nodes[1:])
