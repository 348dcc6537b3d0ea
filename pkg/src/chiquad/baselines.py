"""
Comparison integrators for ∫_0^∞ a(x) f_ν(x) dx at a fixed node budget m.

gen_gauss_laguerre     y = ν x²/2, Gauss rule for the weight y^{ν/2−1} e^{−y}
inverse_cdf_legendre   y = F_ν(x), then Gauss-Legendre on z = 2y − 1
truncated_legendre     Gauss-Legendre on the Mori window [y_lo, y_lo + d]
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from chiquad.gauss import generalized_laguerre_rule, legendre_rule
from chiquad.mori import MoriWindow, psi, transform
from chiquad.specfun import _check_nu, chi2_isf, chi2_ppf
from chiquad.trapz import Integrand


@dataclass(frozen=True)
class BaselineResult:
    method: str
    m: int
    value: float
    evaluations: int


def _weighted_sum(weights, values) -> float:
    return math.fsum(w * v for w, v in zip(weights, values))


@lru_cache(maxsize=64)
def laguerre_abscissae(nu: int, m: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """x-space nodes √(2 y_j / ν) and weights w_j / Γ(ν/2)."""
    rule = generalized_laguerre_rule(0.5 * nu - 1.0, m)
    xs = tuple(math.sqrt(2.0 * y / nu) for y in rule.nodes)
    return xs, tuple(float(w) for w in rule.prob_weights)


def gen_gauss_laguerre(nu: int, a: Integrand, m: int) -> BaselineResult:
    _check_nu(nu)
    xs, ws = laguerre_abscissae(nu, m)
    value = _weighted_sum(ws, [a(x) for x in xs])
    return BaselineResult("gen_gauss_laguerre", m, value, m)


def chi_scaled_ppf(nu: int, p: float, q: float) -> float:
    """F_ν^{-1}(p) = √(Q_ν^{-1}(p) / ν); q = 1 − p supplied for upper-half accuracy."""
    t = chi2_ppf(nu, p) if p <= 0.5 else chi2_isf(nu, q)
    return math.sqrt(t / nu)


@lru_cache(maxsize=64)
def inverse_cdf_abscissae(nu: int, m: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    rule = legendre_rule(m)
    xs = tuple(
        chi_scaled_ppf(nu, 0.5 * (1.0 + z), 0.5 * (1.0 - z)) for z in rule.nodes
    )
    return xs, tuple(0.5 * float(w) for w in rule.weights)


def inverse_cdf_legendre(nu: int, a: Integrand, m: int) -> BaselineResult:
    _check_nu(nu)
    xs, ws = inverse_cdf_abscissae(nu, m)
    value = _weighted_sum(ws, [a(x) for x in xs])
    return BaselineResult("inverse_cdf_legendre", m, value, m)


def truncated_legendre(nu: int, a: Integrand, window: MoriWindow, m: int) -> BaselineResult:
    """(d/2) Σ w_j a(x(y_j)) ψ_ν(y_j) with y_j the Legendre nodes mapped onto the window."""
    _check_nu(nu)
    if window.nu != nu:
        raise ValueError(f"window built for nu={window.nu}, not {nu}")
    rule = legendre_rule(m)
    half = 0.5 * window.d
    terms = []
    for z, w in zip(rule.nodes, rule.weights):
        y = window.y_lo + (float(z) + 1.0) * half
        terms.append(float(w) * a(transform(y).x) * psi(nu, y))
    return BaselineResult("truncated_legendre", m, half * math.fsum(terms), m)
