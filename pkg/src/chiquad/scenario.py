"""
Known-answer test integrands.

For T ~ t_ν, conditioning on the chi-distributed denominator gives

    1 − α = ∫_0^∞ (2 Φ(t_{ν,1−α/2} x) − 1) f_ν(x) dx,

so a_{ν,α}(x) = 2Φ(t x) − 1 = erf(t x / √2) has an exactly known integral.

Also here: the change of scale that maps ∫ λ(x) x^ξ f_κ(x) dx onto the
standard form ∫ a(y) f_ν(y) dy with ν = κ + ξ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from chiquad.specfun import _check_nu, log_gamma, t_quantile
from chiquad.trapz import Integrand

NORMAL_975 = 1.959963984540054  # Φ^{-1}(0.975)


@dataclass(frozen=True)
class ScenarioSpec:
    """(ν, α) for the t-interval coverage integrand.

    `t_override` replaces t_{ν,1−α/2}; use it for the ν = ∞ limit curve,
    where the normal quantile takes its place.
    """

    nu: int
    alpha: float
    t_override: float | None = None

    def __post_init__(self) -> None:
        _check_nu(self.nu)
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")

    @property
    def t_crit(self) -> float:
        if self.t_override is not None:
            return self.t_override
        return _t_crit(self.nu, self.alpha)


_T_CACHE: dict[tuple[int, float], float] = {}


def _t_crit(nu: int, alpha: float) -> float:
    key = (nu, alpha)
    if key not in _T_CACHE:
        _T_CACHE[key] = t_quantile(nu, 1.0 - alpha / 2.0)
    return _T_CACHE[key]


def t_interval_integrand(spec: ScenarioSpec) -> Integrand:
    """a_{ν,α}(x) = 2Φ(t_crit x) − 1, bounded by 1."""
    t = spec.t_crit
    scale = t / math.sqrt(2.0)

    def a(x: float) -> float:
        return math.erf(scale * x)

    return Integrand(a, 1.0, f"t-interval(nu={spec.nu}, alpha={spec.alpha})")


def exact_value(spec: ScenarioSpec) -> float:
    return 1.0 - spec.alpha


@dataclass(frozen=True)
class WeightedMomentSpec:
    """∫ λ(x) x^ξ f_κ(x) dx with λ smooth and bounded."""

    kappa: int
    xi: int
    lam: Callable[[float], float]
    lam_bound: float = 1.0

    def __post_init__(self) -> None:
        _check_nu(self.kappa)
        if self.xi < 1 or int(self.xi) != self.xi:
            raise ValueError(f"xi must be a positive integer, got {self.xi!r}")

    @property
    def scale(self) -> float:
        """c(κ, ξ) = √(κ / (κ + ξ))."""
        return math.sqrt(self.kappa / (self.kappa + self.xi))

    @property
    def nu(self) -> int:
        return self.kappa + self.xi


def weighted_moment_to_standard(spec: WeightedMomentSpec) -> tuple[int, Integrand, float]:
    """(ν, a, prefactor) with ∫ λ x^ξ f_κ = prefactor · ∫ a f_ν.

    prefactor = (2/κ)^{ξ/2} Γ(ν/2) / Γ(κ/2), assembled in log space.
    """
    nu = spec.nu
    c = spec.scale
    lam = spec.lam

    def a(y: float) -> float:
        return lam(y / c)

    log_pref = (
        0.5 * spec.xi * math.log(2.0 / spec.kappa)
        + log_gamma(0.5 * nu)
        - log_gamma(0.5 * spec.kappa)
    )
    return nu, Integrand(a, spec.lam_bound, "converted"), math.exp(log_pref)
