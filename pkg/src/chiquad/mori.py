"""
Mori's change of variable x(y) = exp(y/2 − e^{−y}) and the trimming machinery.

After the substitution the integral over (0, ∞) against f_ν becomes an
integral over the real line against

    ψ_ν(y) = f_ν(x(y)) · dx/dy,

which decays double exponentially in both directions.  A finite trapezoidal
sum starting at y_lo and covering a window of length d discards at most

    u_ν(y_lo, d) = Q_ν(ν x²(y_lo)) + 1 − Q_ν(ν x²(y_lo + d))

of probability mass, provided the window contains the mode of ψ_ν.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from chiquad.specfun import chi2_cdf, chi2_sf, log_chi_scaled_pdf_from_log_x, _check_nu

# beyond this e^{-y} overflows; x(y) is 0 to double precision long before
_Y_UNDERFLOW = -700.0


@dataclass(frozen=True)
class MoriPoint:
    y: float
    x: float
    dxdy: float


def log_x(y: float) -> float:
    """ln x(y) = y/2 − e^{−y}."""
    if y < _Y_UNDERFLOW:
        return -math.inf
    return 0.5 * y - math.exp(-y)


def transform(y: float) -> MoriPoint:
    """Map y to (x(y), dx/dy); underflows cleanly to zero on the far left."""
    if not math.isfinite(y):
        raise ValueError(f"transform requires finite y, got {y!r}")
    lx = log_x(y)
    if lx == -math.inf:
        return MoriPoint(y, 0.0, 0.0)
    x = math.exp(lx) if lx < 709.0 else math.inf
    return MoriPoint(y, x, x * (0.5 + math.exp(-y)))


def log_psi(nu: int, y: float) -> float:
    """ln ψ_ν(y); −inf where ψ_ν underflows."""
    lx = log_x(y)
    if lx == -math.inf:
        return -math.inf
    # f_ν(x)·x(½ + e^{−y}) with the ln x terms cancelled
    return (
        log_chi_scaled_pdf_from_log_x(nu, lx)
        + lx
        + math.log(0.5 + math.exp(-y))
    )


def psi(nu: int, y: float) -> float:
    """ψ_ν(y) = f_ν(x(y)) dx/dy."""
    return math.exp(log_psi(nu, y))


def _dlog_psi(nu: int, y: float) -> float:
    # d/dy ln ψ_ν = ν s (1 − x²) − e^{−y}/s,  s = ½ + e^{−y}
    e = math.exp(-y)
    s = 0.5 + e
    x2 = math.exp(2.0 * log_x(y))
    return nu * s * (1.0 - x2) - e / s


@lru_cache(maxsize=None)
def psi_mode(nu: int) -> float:
    """y*_ν, the maximizer of ψ_ν.

    Found by bisection on the sign of d ln ψ_ν/dy over [−5, 5]; a coarse grid
    check confirms that ψ_ν rises then falls on that interval.
    """
    _check_nu(nu)
    grid = [-5.0 + 0.05 * i for i in range(201)]
    vals = [log_psi(nu, y) for y in grid]
    peak = max(range(len(vals)), key=vals.__getitem__)
    rising = all(vals[i] < vals[i + 1] for i in range(peak) if vals[i] > -math.inf)
    falling = all(vals[i] > vals[i + 1] for i in range(peak, len(vals) - 1) if vals[i + 1] > -math.inf)
    if not (rising and falling) or peak in (0, len(vals) - 1):
        raise ArithmeticError(f"psi_{nu} is not unimodal on [-5, 5]")
    lo, hi = grid[peak - 1], grid[peak + 1]
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if _dlog_psi(nu, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def trimming_bound(nu: int, y: float, d: float) -> float:
    """u_ν(y, d): probability mass left of y plus mass right of y + d."""
    if not d > 0.0:
        raise ValueError(f"window length must be positive, got {d!r}")
    left = 2.0 * log_x(y)
    right = 2.0 * log_x(y + d)
    t_left = nu * math.exp(left) if left < 709.0 else math.inf
    t_right = nu * math.exp(right) if right < 709.0 else math.inf
    return chi2_cdf(nu, t_left) + chi2_sf(nu, t_right)


@dataclass(frozen=True)
class MoriWindow:
    """Where the infinite trapezoidal sum is cut: [y_lo, y_lo + d]."""

    nu: int
    y_lo: float
    d: float
    bound: float

    @property
    def y_hi(self) -> float:
        return self.y_lo + self.d

    def contains_mode(self) -> bool:
        y_star = psi_mode(self.nu)
        return self.y_lo < y_star < self.y_lo + self.d


def balanced_left_edge(nu: int, d: float) -> float:
    """The y minimizing u_ν(y, d), i.e. the root of ψ_ν(y) = ψ_ν(y + d).

    The root lies in [y* − d, y*] by unimodality; it is located by bisection
    on ln ψ_ν(y) − ln ψ_ν(y + d), which stays well scaled where u_ν itself is
    flat to machine precision.
    """
    y_star = psi_mode(nu)
    lo, hi = y_star - d, y_star
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        diff = log_psi(nu, mid) - log_psi(nu, mid + d)
        if math.isnan(diff):
            # both sides underflowed; only possible far to the left
            lo = mid
        elif diff < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def min_trimming_bound(nu: int, d: float) -> tuple[float, float]:
    """(y_lo, min_y u_ν(y, d))."""
    y = balanced_left_edge(nu, d)
    return y, trimming_bound(nu, y, d)


@lru_cache(maxsize=256)
def solve_window(nu: int, target: float) -> MoriWindow:
    """Window (y_lo, d) with min_y u_ν(y, d) = target.

    Bisection on d (in log of the minimized bound, which is monotone in d);
    the inner minimizer comes from `balanced_left_edge`.
    """
    _check_nu(nu)
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target!r}")
    d_lo, d_hi = 1e-6, 200.0
    _, u_hi = min_trimming_bound(nu, d_hi)
    if u_hi > target:
        raise ArithmeticError(f"trimming target {target!r} unreachable with d <= {d_hi}")
    log_target = math.log(target)
    for _ in range(200):
        d = 0.5 * (d_lo + d_hi)
        y_lo, u = min_trimming_bound(nu, d)
        if u == target:
            break
        if u > 0.0 and math.log(u) > log_target:
            d_lo = d
        else:
            d_hi = d
        if d_hi - d_lo <= 1e-14 * d_hi:
            break
    # the upper end of the bracket always satisfies u <= target
    d = d_hi
    y_lo, u = min_trimming_bound(nu, d)
    return MoriWindow(nu=nu, y_lo=y_lo, d=d, bound=u)
