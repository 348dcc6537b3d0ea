"""
Trapezoidal sums over a Mori window and the two nested refinement procedures.

simple_procedure
    Fixed window from `solve_window(ν, 1e-3 ε)`, n = 5 nodes with both
    window ends included, then repeated halving of h (n -> 2n - 1).

exponential_procedure
    Window grows by 2b on each halving of h (b = h0), so d increases more
    slowly than 1/h and the error decays exponentially in the node count
    n_k = (n0 + 2k) 2^k.

Both procedures cache integrand values by exact dyadic node position, so a
refined grid only evaluates its new nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from chiquad.mori import log_psi, psi, solve_window, transform, trimming_bound
from chiquad.specfun import _check_nu

MACHINE_FLOOR = 1.11e-16


class IntegrandBoundError(ValueError):
    """The integrand exceeded its declared bound at a quadrature node."""


@dataclass(frozen=True)
class Integrand:
    """A bounded function a on (0, ∞): |a(x)| <= bound."""

    eval: Callable[[float], float]
    bound: float = 1.0
    name: str = "a"

    def __call__(self, x: float) -> float:
        v = self.eval(x)
        if not abs(v) <= self.bound:
            raise IntegrandBoundError(
                f"integrand {self.name!r} returned {v!r} at x={x!r}, exceeding bound {self.bound}"
            )
        return v


@dataclass(frozen=True)
class GridSpec:
    """Nodes y_lo + h j, j = 0..n-1."""

    y_lo: float
    h: float
    n: int

    def __post_init__(self) -> None:
        if not self.h > 0.0 or self.n < 1:
            raise ValueError(f"invalid grid: h={self.h!r}, n={self.n!r}")

    def nodes(self) -> list[float]:
        return [self.y_lo + j * self.h for j in range(self.n)]


class Iterate(NamedTuple):
    n: int
    h: float
    value: float


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    evaluations: int
    history: tuple[Iterate, ...]
    est_discretization_error: float
    trimming_bound: float
    converged: bool
    y_lo: float = math.nan
    d: float = math.nan


def weighted_value(nu: int, a: Integrand, y: float) -> tuple[float, bool]:
    """(a(x(y)) ψ_ν(y), whether a was called).  a is skipped where ψ_ν underflows."""
    w = psi(nu, y)
    if w == 0.0:
        return 0.0, False
    return a(transform(y).x) * w, True


def trapezoid_sum(nu: int, a: Integrand, grid: GridSpec) -> float:
    """h Σ_j a(x(y_j)) ψ_ν(y_j), accumulated with exactly rounded summation."""
    _check_nu(nu)
    terms = [weighted_value(nu, a, y)[0] for y in grid.nodes()]
    return grid.h * math.fsum(terms)


@dataclass
class _NodeCache:
    nu: int
    a: Integrand
    values: dict = field(default_factory=dict)
    evaluations: int = 0

    def get(self, key: Fraction, y: float) -> float:
        try:
            return self.values[key]
        except KeyError:
            v, called = weighted_value(self.nu, self.a, y)
            self.evaluations += called
            self.values[key] = v
            return v


def _stop(curr: float, prev: float, epsilon: float) -> bool:
    tol = max(epsilon, 4.0 * MACHINE_FLOOR * max(1.0, abs(curr)))
    return abs(curr - prev) <= tol


def simple_procedure(
    nu: int,
    a: Integrand,
    epsilon: float,
    n_max: int = 1025,
    stop_early: bool = True,
    n_start: int = 5,
) -> QuadratureResult:
    """Nested trapezoidal refinement on the window for trimming target 1e-3 ε.

    Parameters
    ----------
    epsilon : float
        Requested accuracy, 0 < ε < 1.
    n_max : int
        Largest node count allowed; the sequence is 5, 9, 17, 33, 65, ...
    stop_early : bool
        Apply the successive-difference stopping rule.  With False the run
        continues until the next halving would exceed n_max, which is how
        the fixed-budget tables are produced.
    """
    _check_nu(nu)
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if n_max < n_start:
        raise ValueError(f"n_max must be at least {n_start}, got {n_max}")
    window = solve_window(nu, 1e-3 * epsilon)
    cache = _NodeCache(nu, a)
    intervals = n_start - 1
    history: list[Iterate] = []
    converged = False
    level = 0
    while True:
        n = intervals * 2**level + 1
        h = window.d / intervals / 2**level
        terms = [
            cache.get(Fraction(j, n - 1), window.y_lo + j * h) for j in range(n)
        ]
        value = h * math.fsum(terms)
        history.append(Iterate(n, h, value))
        if level >= 2 and _stop(value, history[-2].value, epsilon):
            converged = True
            if stop_early:
                break
        if 2 * n - 1 > n_max:
            break
        level += 1
    est = abs(history[-1].value - history[-2].value) if len(history) > 1 else math.inf
    return QuadratureResult(
        value=history[-1].value,
        evaluations=cache.evaluations,
        history=tuple(history),
        est_discretization_error=est,
        trimming_bound=window.bound,
        converged=converged,
        y_lo=window.y_lo,
        d=window.d,
    )


def exponential_procedure(
    nu: int,
    a: Integrand,
    n0: int = 4,
    initial_target: float = 1e-6,
    k_max: int = 6,
    epsilon: float | None = None,
) -> QuadratureResult:
    """Trapezoidal refinement that widens the window by 2 h0 on every halving.

    Iteration k uses y_lo = y_lo0 − k h0, h = h0 / 2^k and n = (n0 + 2k) 2^k
    nodes.  All k = 0..k_max are run unless `epsilon` is given, in which case
    the successive-difference rule may stop the run earlier.
    """
    _check_nu(nu)
    if n0 < 2:
        raise ValueError(f"n0 must be at least 2, got {n0}")
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    window = solve_window(nu, initial_target)
    h0 = window.d / n0
    cache = _NodeCache(nu, a)
    history: list[Iterate] = []
    converged = False
    for k in range(k_max + 1):
        scale = 2**k
        n = (n0 + 2 * k) * scale
        h = h0 / scale
        terms = []
        for j in range(n):
            # offset from y_lo0 in units of h0; the reduced fraction fixes y
            offset = Fraction(j - k * scale, scale)
            y = window.y_lo + offset.numerator * (h0 / offset.denominator)
            terms.append(cache.get(offset, y))
        value = h * math.fsum(terms)
        history.append(Iterate(n, h, value))
        if epsilon is not None and k >= 2 and _stop(value, history[-2].value, epsilon):
            converged = True
            break
    k_last = len(history) - 1
    y_lo = window.y_lo - k_last * h0
    d = window.d + 2 * k_last * h0
    est = abs(history[-1].value - history[-2].value) if len(history) > 1 else math.inf
    return QuadratureResult(
        value=history[-1].value,
        evaluations=cache.evaluations,
        history=tuple(history),
        est_discretization_error=est,
        trimming_bound=trimming_bound(nu, y_lo, d),
        converged=converged,
        y_lo=y_lo,
        d=d,
    )


def convergence_diagnostic(result: QuadratureResult, exact: float) -> list[tuple[int, float]]:
    """Per-iteration (n, log10 |value − exact|), with |error| floored at 1.11e-16."""
    if not result.history:
        raise ValueError("empty history")
    return [
        (it.n, math.log10(max(abs(it.value - exact), MACHINE_FLOOR)))
        for it in result.history
    ]


def discarded_mass(nu: int, y_lo: float, h: float, n: int, max_terms: int = 100_000) -> float:
    """h Σ ψ_ν over the grid nodes outside j = 0..n-1, summed until underflow."""
    total = []
    for direction, start in ((-1, -1), (1, n)):
        j = start
        for _ in range(max_terms):
            lp = log_psi(nu, y_lo + h * j)
            if lp == -math.inf or lp < -745.0:
                break
            total.append(math.exp(lp))
            j += direction
    return h * math.fsum(total)
