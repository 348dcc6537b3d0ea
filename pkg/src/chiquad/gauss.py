"""
Gauss-Legendre and generalized Gauss-Laguerre rules.

Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix
(Golub-Welsch), polished by Newton steps on the orthonormal polynomial.
Weights are Christoffel numbers 1 / Σ_k p_k(x_j)², evaluated with a
rescaled three-term recurrence; unlike squared eigenvector components they
keep full relative accuracy for the tiny weights at the far Laguerre nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

_RESCALE = 1e100


@dataclass(frozen=True)
class GaussRule:
    """m-point rule: ∫ f(x) w(x) dx ≈ Σ weights[j] f(nodes[j]).

    `prob_weights` are the weights divided by ∫ w (they sum to one); for the
    Laguerre family with large α only these stay finite.
    """

    kind: str
    m: int
    nodes: np.ndarray
    prob_weights: np.ndarray
    log_mu0: float
    alpha: float | None = None

    @property
    def weights(self) -> np.ndarray:
        return self.prob_weights * math.exp(self.log_mu0)

    @property
    def mu0(self) -> float:
        return math.exp(self.log_mu0)

    def integrate(self, f) -> float:
        """Σ weights · f(nodes), f vectorized."""
        return float(np.dot(self.weights, f(self.nodes)))


def _orthonormal_sums(x: np.ndarray, diag: np.ndarray, off: np.ndarray):
    """Evaluate p_m(x)/p_m'(x) and Σ_{k<m} p_k(x)² for monic-normalized p_0 = 1.

    Recurrence: off[k] p_{k+1} = (x − diag[k]) p_k − off[k−1] p_{k−1}.
    Values are rescaled whenever they grow past 1e100; the running log-scale
    is returned alongside so that Σ p_k² is known as (sumsq, log_scale).
    """
    m = diag.size
    p_prev = np.zeros_like(x)
    p_cur = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp_cur = np.zeros_like(x)
    sumsq = np.ones_like(x)
    log_scale = np.zeros_like(x)
    for k in range(m):
        b_prev = off[k - 1] if k > 0 else 0.0
        b_next = off[k] if k < m - 1 else 1.0
        p_next = ((x - diag[k]) * p_cur - b_prev * p_prev) / b_next
        dp_next = (p_cur + (x - diag[k]) * dp_cur - b_prev * dp_prev) / b_next
        p_prev, p_cur = p_cur, p_next
        dp_prev, dp_cur = dp_cur, dp_next
        if k < m - 1:
            sumsq = sumsq + p_cur * p_cur
        big = np.abs(p_cur) > _RESCALE
        if big.any():
            s = np.where(big, 1.0 / _RESCALE, 1.0)
            p_prev *= s
            p_cur *= s
            dp_prev *= s
            dp_cur *= s
            sumsq *= s * s
            log_scale += np.where(big, math.log(_RESCALE), 0.0)
    # p_cur is p_m up to the positive factor 1/Π off (taking off[m-1] := 1)
    return p_cur / dp_cur, sumsq, log_scale


def _golub_welsch(diag: np.ndarray, off: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m = diag.size
    if m == 1:
        nodes = diag.copy()
    else:
        nodes = eigvalsh_tridiagonal(diag, off)
    for _ in range(2):
        ratio, _, _ = _orthonormal_sums(nodes, diag, off)
        nodes = nodes - ratio
    _, sumsq, log_scale = _orthonormal_sums(nodes, diag, off)
    prob_weights = np.exp(-np.log(sumsq) - 2.0 * log_scale)
    order = np.argsort(nodes)
    return nodes[order], prob_weights[order]


def legendre_rule(m: int) -> GaussRule:
    """m-point Gauss-Legendre rule on [−1, 1]."""
    if not 1 <= m <= 500:
        raise ValueError(f"Legendre rule needs 1 <= m <= 500, got {m}")
    k = np.arange(1, m, dtype=float)
    diag = np.zeros(m)
    off = k / np.sqrt(4.0 * k * k - 1.0)
    nodes, pw = _golub_welsch(diag, off)
    # exact symmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    pw = 0.5 * (pw + pw[::-1])
    return GaussRule("legendre", m, nodes, pw, math.log(2.0))


def generalized_laguerre_rule(alpha: float, m: int) -> GaussRule:
    """m-point rule for ∫_0^∞ f(y) y^α e^{−y} dy."""
    if not alpha > -1.0:
        raise ValueError(f"generalized Laguerre rule needs alpha > -1, got {alpha!r}")
    if not 1 <= m <= 200:
        raise ValueError(f"generalized Laguerre rule needs 1 <= m <= 200, got {m}")
    k = np.arange(m, dtype=float)
    diag = 2.0 * k + alpha + 1.0
    kk = np.arange(1, m, dtype=float)
    off = np.sqrt(kk * (kk + alpha))
    nodes, pw = _golub_welsch(diag, off)
    return GaussRule("generalized_laguerre", m, nodes, pw, math.lgamma(alpha + 1.0), alpha)
