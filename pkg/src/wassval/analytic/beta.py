"""
WassVal - Beta-beta distance
Closed-form W2 between Beta(alpha, beta) and its mirror image Beta(beta, alpha)
"""

import numpy as np
from scipy.special import betaincinv, hyp2f1

from ..quadrature import integrate


def _inverse_pair(a: float, b: float, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """I_t^{-1}(a, b) and 1 - I_t^{-1}(a, b), each computed from the better-conditioned tail."""
    lower = t <= 0.5
    s = np.where(lower, t, 1.0 - t)
    head = betaincinv(a, b, s)
    tail = betaincinv(b, a, s)
    value = np.where(lower, head, 1.0 - tail)
    complement = np.where(lower, 1.0 - head, tail)
    return value, complement


def beta_correlation_integral(alpha: float, beta: float) -> float:
    """
    The integration-by-parts remainder

        1/(beta+1) int_0^1 f^(1-alpha) (1-f)^(1-beta) g^(beta+1) 2F1(beta+1, 1-alpha; beta+2; g) dt

    with f = I_t^{-1}(alpha, beta) and g = I_t^{-1}(beta, alpha).
    """
    def integrand(t: np.ndarray) -> np.ndarray:
        f, f_complement = _inverse_pair(alpha, beta, t)
        g, _ = _inverse_pair(beta, alpha, t)
        return (
            f ** (1.0 - alpha)
            * f_complement ** (1.0 - beta)
            * g ** (beta + 1.0)
            * hyp2f1(beta + 1.0, 1.0 - alpha, beta + 2.0, g)
        )
    return integrate(integrand) / (beta + 1.0)


def beta_second_moment(alpha: float, beta: float) -> float:
    """int_0^1 (I_t^{-1}(alpha, beta))^2 dt = alpha (alpha + 1) / ((alpha + beta)(alpha + beta + 1))"""
    return alpha * (alpha + 1.0) / ((alpha + beta) * (alpha + beta + 1.0))


def beta_beta_w2(alpha: float, beta: float) -> float:
    """
    W2 between the beta laws with parameters (alpha, beta) and (beta, alpha) on [0, 1].

    W2^2 = (alpha(alpha+1) + beta(beta+1)) / ((alpha+beta)(alpha+beta+1))
           - 2 (beta / (alpha + beta) - J)

    Raises:
        ValueError: nonpositive parameter
        QuadratureError: the J integral failed its convergence check
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if alpha == beta:
        return 0.0
    moments = beta_second_moment(alpha, beta) + beta_second_moment(beta, alpha)
    squared = moments - 2.0 * (beta / (alpha + beta) - beta_correlation_integral(alpha, beta))
    return float(np.sqrt(max(squared, 0.0)))
