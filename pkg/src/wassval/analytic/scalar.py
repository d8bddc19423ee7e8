"""
WassVal - Scalar closed forms
Wasserstein gaps between scalar linear, affine and linear stochastic systems
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate as scipy_integrate
from scipy.special import ndtri

from ..densities.cdf import Cdf1D
from ..errors import QuadratureError
from ..quadrature import integrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarLinearPair:
    """
    Two scalar systems x_i' = a_i x + b_i (+ g_i dbeta), y_i = c_i x + d_i.

    With `discrete` set the pair is x_i(k+1) = a_i x_i(k) and stability means |a_i| < 1.
    """

    a1: float
    c1: float
    a2: float
    c2: float
    b1: float = 0.0
    d1: float = 0.0
    b2: float = 0.0
    d2: float = 0.0
    g1: float = 0.0
    g2: float = 0.0
    discrete: bool = False

    def __post_init__(self):
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("output gains c1, c2 must be positive")
        if self.discrete:
            if abs(self.a1) >= 1 or abs(self.a2) >= 1:
                raise ValueError("discrete pair needs |a1|, |a2| < 1")
        elif self.a1 >= 0 or self.a2 >= 0:
            raise ValueError("continuous pair needs a1, a2 < 0")

    def p(self, t: float) -> float:
        return self.c1 * np.exp(self.a1 * t) - self.c2 * np.exp(self.a2 * t)

    def q(self, t: float) -> float:
        return (
            self.b1 * self.c1 / self.a1 * np.expm1(self.a1 * t)
            - self.b2 * self.c2 / self.a2 * np.expm1(self.a2 * t)
            + (self.d1 - self.d2)
        )

    def r(self, t: float) -> float:
        def spread(a: float, g: float, c: float) -> float:
            return abs(g) * c * np.sqrt(np.expm1(2.0 * a * t) / (2.0 * a))
        return spread(self.a1, self.g1, self.c1) - spread(self.a2, self.g2, self.c2)


def _check_moment(m20: float) -> None:
    if m20 < 0:
        raise ValueError("m20 must be nonnegative")


def w2_scalar_linear(pair: ScalarLinearPair, m20: float, t: float) -> float:
    """sqrt(m20) |c1 e^{a1 t} - c2 e^{a2 t}|"""
    _check_moment(m20)
    return float(np.sqrt(m20) * abs(pair.p(t)))


def w2_scalar_affine(pair: ScalarLinearPair, m10: float, m20: float, t: float) -> float:
    """sqrt(p^2 m20 + 2 p q m10 + q^2) for the affine pair."""
    _check_moment(m20)
    p, q = pair.p(t), pair.q(t)
    return float(np.sqrt(max(p * p * m20 + 2.0 * p * q * m10 + q * q, 0.0)))


def scalar_affine_asymptote(pair: ScalarLinearPair) -> float:
    """Limit of the affine gap: |(d1 - d2) - (c1 b1 / a1 - c2 b2 / a2)|."""
    return float(abs((pair.d1 - pair.d2) - (pair.c1 * pair.b1 / pair.a1 - pair.c2 * pair.b2 / pair.a2)))


def w2_scalar_sde(pair: ScalarLinearPair, m20: float, s_f0: float, t: float) -> float:
    """
    sqrt(p^2 m20 + 2 p r s(F0) + r^2) for linear SDEs with additive noise of
    magnitude g_i against a standard Wiener process.
    """
    _check_moment(m20)
    if pair.discrete:
        raise ValueError("the SDE gap needs a continuous pair")
    p, r = pair.p(t), pair.r(t)
    return float(np.sqrt(max(p * p * m20 + 2.0 * p * r * s_f0 + r * r, 0.0)))


def w2_scalar_sde_gaussian(pair: ScalarLinearPair, mu0: float, sigma0: float, t: float) -> float:
    """SDE gap for a Gaussian initial law, where s(F0) = sigma0."""
    return w2_scalar_sde(pair, mu0 * mu0 + sigma0 * sigma0, sigma0, t)


def w2_scalar_linear_discrete(pair: ScalarLinearPair, m20: float, k: int) -> float:
    """sqrt(m20) |c1 a1^k - c2 a2^k| for the discrete pair."""
    _check_moment(m20)
    if not pair.discrete:
        raise ValueError("the discrete gap needs a discrete pair")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return float(np.sqrt(m20) * abs(pair.c1 * pair.a1 ** k - pair.c2 * pair.a2 ** k))


def s_statistic(
    f0: Cdf1D,
    density: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    support: Optional[tuple[float, float]] = None,
) -> float:
    """
    s(F0) = sqrt(2) E[x0 erfinv(2 F0(x0) - 1)] = E[x0 Phi^{-1}(F0(x0))].

    Evaluated as the quantile integral of Q0(u) Phi^{-1}(u) over (0, 1); with a density
    and a finite support the expectation is integrated over x instead.

    Raises:
        QuadratureError: the integral failed its convergence check
    """
    if density is not None and support is not None:
        lower, upper = support
        value, error = scipy_integrate.quad(
            lambda x: x * ndtri(np.clip(f0(x), 1e-300, 1.0 - 1e-16)) * density(np.atleast_1d(x))[0],
            lower, upper, limit=200,
        )
        if not np.isfinite(value) or error > 1e-6 * max(1.0, abs(value)):
            raise QuadratureError(f"s(F0) integral did not converge (error estimate {error:.2e})")
        return float(value)
    return integrate(lambda u: f0.quantile(u) * ndtri(u))
