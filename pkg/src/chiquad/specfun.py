"""
Special functions used throughout the package.

Everything here is scalar, pure-Python float arithmetic:

    log_gamma                  ln Γ(z)
    gamma_p / gamma_q          regularized incomplete gamma P(a, x), Q(a, x)
    chi2_cdf / chi2_sf         Q_ν(t) = P(ν/2, t/2) and its complement
    chi2_ppf / chi2_isf        inverses of the two above
    normal_cdf                 Φ(x)
    beta_inc                   regularized incomplete beta I_x(a, b)
    t_cdf / t_sf / t_quantile  Student-t distribution
    chi_scaled_pdf             density of R / √ν, R ~ χ_ν

The incomplete gamma and beta prefactors are evaluated with the Stirling
remainder split out so that large shape parameters (ν up to ~1e6) do not
lose digits to cancellation between lgamma and a·log(x).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from statistics import NormalDist

_LOG_2PI = math.log(2.0 * math.pi)
_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_ITER = 100_000
# B_{2k} / (2k (2k - 1)), k = 1..8
_STIRLING = (
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400,
)


def log_gamma(z: float) -> float:
    """ln Γ(z) for z > 0."""
    if not z > 0.0:
        raise ValueError(f"log_gamma requires z > 0, got {z!r}")
    return math.lgamma(z)


def stirling_remainder(a: float) -> float:
    """μ(a) = ln Γ(a) − (a − ½) ln a + a − ½ ln 2π.

    For a ≥ 10 the asymptotic series is used, which is accurate to full
    relative precision; below that the direct difference is small enough
    that cancellation does not matter.
    """
    if a >= 10.0:
        r = 1.0 / a
        r2 = r * r
        total = 0.0
        for c in reversed(_STIRLING):
            total = total * r2 + c
        return r * total
    return math.lgamma(a) - (a - 0.5) * math.log(a) + a - 0.5 * _LOG_2PI


def _log1pmx(u: float) -> float:
    """log(1 + u) − u without cancellation for small |u|."""
    if abs(u) < 0.1:
        # alternating series -u²/2 + u³/3 - ...
        total = 0.0
        k = 2
        power = u * u
        while True:
            term = (-1) ** (k + 1) * power / k
            total += term
            if abs(term) <= _EPS * abs(total) * 0.25:
                break
            power *= u
            k += 1
        return total
    return math.log1p(u) - u


def _log_gamma_prefactor(a: float, x: float) -> float:
    """ln(x^a e^{-x} / Γ(a))."""
    if x == 0.0:
        return -math.inf
    if a < 10.0:
        return a * math.log(x) - x - math.lgamma(a)
    u = (x - a) / a
    if abs(u) < 0.5:
        core = a * _log1pmx(u)
    else:
        core = a * (math.log(x) - math.log(a)) - (x - a)
    return core + 0.5 * math.log(a) - 0.5 * _LOG_2PI - stirling_remainder(a)


def _gamma_series(a: float, x: float) -> float:
    """P(a, x) by the power series, x < a + 1."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma series failed to converge (a={a}, x={x})")
    return total * math.exp(_log_gamma_prefactor(a, x))


def _gamma_cf(a: float, x: float) -> float:
    """Q(a, x) by the Legendre continued fraction (modified Lentz), x ≥ a + 1."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"incomplete gamma continued fraction failed (a={a}, x={x})")
    return h * math.exp(_log_gamma_prefactor(a, x))


def gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if a <= 0.0:
        raise ValueError(f"shape must be positive, got {a!r}")
    if x < 0.0:
        raise ValueError(f"argument must be nonnegative, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return min(1.0, _gamma_series(a, x))
    return 1.0 - _gamma_cf(a, x)


def gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x)."""
    if a <= 0.0:
        raise ValueError(f"shape must be positive, got {a!r}")
    if x < 0.0:
        raise ValueError(f"argument must be nonnegative, got {x!r}")
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def _check_nu(nu: int) -> None:
    if nu < 1 or int(nu) != nu:
        raise ValueError(f"degrees of freedom must be a positive integer, got {nu!r}")


def chi2_cdf(nu: int, t: float) -> float:
    """P(χ²_ν ≤ t)."""
    _check_nu(nu)
    if t < 0.0:
        raise ValueError(f"chi2_cdf requires t >= 0, got {t!r}")
    return gamma_p(0.5 * nu, 0.5 * t)


def chi2_sf(nu: int, t: float) -> float:
    """P(χ²_ν > t), computed directly so small tails keep relative accuracy."""
    _check_nu(nu)
    if t < 0.0:
        raise ValueError(f"chi2_sf requires t >= 0, got {t!r}")
    return gamma_q(0.5 * nu, 0.5 * t)


def chi2_pdf(nu: int, t: float) -> float:
    _check_nu(nu)
    if t <= 0.0:
        if t == 0.0 and nu == 2:
            return 0.5
        return 0.0 if (t < 0.0 or nu > 2) else math.inf
    a = 0.5 * nu
    return 0.5 * math.exp(_log_gamma_prefactor(a, 0.5 * t) - math.log(0.5 * t))


def _wilson_hilferty(nu: int, z: float) -> float:
    c = 2.0 / (9.0 * nu)
    return nu * max(1.0 - c + z * math.sqrt(c), 1e-3) ** 3


def _chi2_invert(nu: int, prob: float, upper: bool) -> float:
    """Solve chi2_cdf(t) = prob (or chi2_sf(t) = prob when upper)."""
    if not 0.0 < prob < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {prob!r}")
    target = math.log(prob)
    fn = chi2_sf if upper else chi2_cdf
    sign = -1.0 if upper else 1.0

    def resid(t: float) -> float:
        # in log space; increasing in t for the cdf, decreasing for the tail
        v = fn(nu, t)
        return (math.log(v) if v > 0.0 else -math.inf) - target

    z = NormalDist().inv_cdf(prob)
    if upper:
        z = -z
    t = _wilson_hilferty(nu, z)
    if nu == 1 and not upper and prob < 0.2:
        # P(χ²_1 ≤ t) ≈ √(2t/π) for small t
        t = 0.5 * math.pi * prob * prob
    lo, hi = 0.0, math.inf
    for _ in range(200):
        r = resid(t)
        if r == 0.0:
            return t
        if sign * r > 0.0:
            hi = t
        else:
            lo = t
        # Newton step on log-probability: d/dt log F = pdf / F
        v = fn(nu, t)
        pdf = chi2_pdf(nu, t)
        step = None
        if v > 0.0 and pdf > 0.0:
            step = -r * v / (sign * pdf)
        new = t + step if step is not None else math.nan
        if not (lo < new < hi) or not math.isfinite(new):
            new = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * t + 1.0
        if abs(new - t) <= 4 * _EPS * abs(new):
            return new
        if math.isfinite(hi) and hi - lo <= 4 * _EPS * hi:
            return new
        t = new
    raise ArithmeticError(f"chi-square inversion did not converge (nu={nu}, p={prob})")


def chi2_ppf(nu: int, p: float) -> float:
    """Q_ν^{-1}(p): the t with P(χ²_ν ≤ t) = p."""
    _check_nu(nu)
    if 0.5 < p < 1.0:
        return _chi2_invert(nu, 1.0 - p, upper=True)
    return _chi2_invert(nu, p, upper=False)


def chi2_isf(nu: int, q: float) -> float:
    """The t with P(χ²_ν > t) = q."""
    _check_nu(nu)
    return _chi2_invert(nu, q, upper=True)


def normal_cdf(x: float) -> float:
    """Standard normal cdf Φ(x)."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _log_beta(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    if a < 10.0:
        return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
    # lgamma(a) - lgamma(a + b) with the large terms cancelled analytically
    diff = (
        -(a - 0.5) * math.log1p(b / a)
        - b * math.log(a + b)
        + b
        + stirling_remainder(a)
        - stirling_remainder(a + b)
    )
    return math.lgamma(b) + diff


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for I_x(a, b) (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction failed (a={a}, b={b}, x={x})")


def beta_inc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("beta parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return x
    log_front = a * math.log(x) + b * math.log1p(-x) - _log_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _beta_cf(b, a, 1.0 - x) / b


def beta_inc_complement(a: float, b: float, x: float) -> float:
    """1 − I_x(a, b) = I_{1−x}(b, a), with 1 − x supplied implicitly."""
    return beta_inc(b, a, 1.0 - x)


def _t_tail(nu: int, t: float) -> float:
    """P(T > t) for t ≥ 0."""
    t2 = t * t
    # I_{ν/(ν+t²)}(ν/2, ½) / 2; pick the representation whose argument is exact
    if t2 < nu:
        x = t2 / (nu + t2)
        return 0.5 * (1.0 - beta_inc(0.5, 0.5 * nu, x)) if x > 0 else 0.5
    return 0.5 * beta_inc(0.5 * nu, 0.5, nu / (nu + t2))


def t_sf(nu: int, t: float) -> float:
    """P(T > t), T ~ t_ν."""
    _check_nu(nu)
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    if t >= 0.0:
        return _t_tail(nu, t)
    return 1.0 - _t_tail(nu, -t)


def t_cdf(nu: int, t: float) -> float:
    """P(T ≤ t), T ~ t_ν."""
    return t_sf(nu, -t)


def t_pdf(nu: int, t: float) -> float:
    _check_nu(nu)
    log_c = math.lgamma(0.5 * (nu + 1)) - math.lgamma(0.5 * nu) - 0.5 * math.log(nu * math.pi)
    return math.exp(log_c - 0.5 * (nu + 1) * math.log1p(t * t / nu))


def t_quantile(nu: int, p: float) -> float:
    """t_{ν,p}: the value with P(T ≤ t_{ν,p}) = p.

    Safeguarded Newton on the tail probability, started from the normal
    quantile (or from the Cauchy closed form when ν = 1).
    """
    _check_nu(nu)
    if not 0.0 < p < 1.0:
        raise ValueError(f"t_quantile requires 0 < p < 1, got {p!r}")
    if p == 0.5:
        return 0.0
    q = 1.0 - p if p > 0.5 else p  # tail mass beyond |t|
    sign = 1.0 if p > 0.5 else -1.0
    if nu == 1:
        t = math.tan(math.pi * (0.5 - q))
    elif nu == 2:
        # closed form of the t_2 tail
        a = 1.0 - 2.0 * q
        t = a * math.sqrt(2.0 / (1.0 - a * a))
    else:
        t = -NormalDist().inv_cdf(q)
    lo, hi = 0.0, math.inf
    central = q > 0.25
    if central:
        # near the median solve I_{t²/(ν+t²)}(½, ν/2) = |2p − 1|, which is
        # well conditioned where the tail equation is not
        c = abs(2.0 * p - 1.0)
        log_q = math.log(c)
    else:
        log_q = math.log(q)
    for _ in range(200):
        if central:
            t2 = t * t
            mass = beta_inc(0.5, 0.5 * nu, t2 / (nu + t2))
            r = log_q - math.log(mass) if mass > 0.0 else math.inf
            new = t + r * mass / (2.0 * t_pdf(nu, t))
        else:
            tail = _t_tail(nu, t)
            r = math.log(tail) - log_q  # decreasing in t
            new = t + r * tail / t_pdf(nu, t)
        if r == 0.0:
            break
        if r > 0.0:
            lo = t
        else:
            hi = t
        if not (lo < new < hi) or not math.isfinite(new):
            new = 0.5 * (lo + hi) if math.isfinite(hi) else 2.0 * t + 1.0
        if abs(new - t) <= 2 * _EPS * abs(new):
            t = new
            break
        t = new
    else:
        raise ArithmeticError(f"t quantile did not converge (nu={nu}, p={p})")
    return sign * t


@dataclass(frozen=True)
class ChiScaledDensity:
    """Density f_ν of R/√ν, R ~ χ_ν, with its normalizing constant τ_ν."""

    nu: int

    def __post_init__(self) -> None:
        _check_nu(self.nu)

    @property
    def log_tau(self) -> float:
        return log_tau(self.nu)

    @property
    def tau(self) -> float:
        return math.exp(log_tau(self.nu))

    def __call__(self, x: float) -> float:
        return chi_scaled_pdf(self.nu, x)


@lru_cache(maxsize=None)
def log_tau(nu: int) -> float:
    """ln τ_ν with τ_ν = ν^{ν/2} / (Γ(ν/2) 2^{ν/2 − 1}).

    Rewritten through Stirling's remainder as ½ ln(ν/π) + ν/2 − μ(ν/2),
    which keeps full precision for large ν.
    """
    _check_nu(nu)
    return 0.5 * math.log(nu / math.pi) + 0.5 * nu - stirling_remainder(0.5 * nu)


def log_chi_scaled_pdf_from_log_x(nu: int, log_x: float) -> float:
    """ln f_ν(x) given ln x; exact cancellation of the ν/2 terms near x = 1."""
    a = 0.5 * nu
    if log_x > 354.0:
        return -math.inf
    two_l = 2.0 * log_x
    # ν/2 + (ν−1) ln x − ν x²/2 = −(ν/2)(e^{2L} − 1 − 2L) − L
    return (
        0.5 * math.log(nu / math.pi)
        - stirling_remainder(a)
        - a * (math.expm1(two_l) - two_l)
        - log_x
    )


def chi_scaled_pdf(nu: int, x: float) -> float:
    """f_ν(x) = τ_ν x^{ν−1} exp(−ν x²/2) for x > 0, else 0."""
    _check_nu(nu)
    if x <= 0.0:
        return 0.0
    return math.exp(log_chi_scaled_pdf_from_log_x(nu, math.log(x)))
