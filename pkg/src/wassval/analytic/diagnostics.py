"""
WassVal - Diagnostics
Side calculations that explain a gap: KL divergence against W2 for shifted Gaussians
and the log-noise criterion that decides the fate of the multiplicative logistic map
"""

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy import integrate as scipy_integrate

from ..errors import QuadratureError

logger = logging.getLogger(__name__)

NoiseClass = Literal["as-zero", "ip-zero", "stationary-exists"]


@dataclass(frozen=True)
class GaussianKlDiagnostic:
    """
    KL divergence and W2 between N(m1, S) and N(m2, S). `ratio` is D_KL / W2, None
    when the means coincide; `bracket` is the Rayleigh-quotient range containing it.
    """

    kl: float
    w2: float
    ratio: Optional[float]
    bracket: tuple[float, float]

    def to_dict(self) -> dict:
        return {"kl": self.kl, "w2": self.w2, "ratio": self.ratio, "bracket": list(self.bracket)}


def gaussian_kl_diag(m1, m2, sigma) -> GaussianKlDiagnostic:
    """
    D_KL = m^T S^-1 m / 2, W2 = ||m|| with m = m2 - m1; the ratio equals (||m|| / 2) r with
    r the Rayleigh quotient of S^-1, so it lies in [||m|| / (2 lmax), ||m|| / (2 lmin)].

    Raises:
        ValueError: S singular, not positive definite, or of the wrong shape
    """
    m = np.atleast_1d(np.asarray(m2, dtype=float) - np.asarray(m1, dtype=float))
    sigma = np.atleast_2d(np.asarray(sigma, dtype=float))
    if sigma.shape != (m.size, m.size):
        raise ValueError(f"covariance shape {sigma.shape} does not match mean of size {m.size}")
    eigenvalues = np.linalg.eigvalsh(0.5 * (sigma + sigma.T))
    if eigenvalues.min() <= 0:
        raise ValueError("covariance must be positive definite")

    kl = 0.5 * float(m @ np.linalg.solve(sigma, m))
    norm = float(np.linalg.norm(m))
    bracket = (norm / (2.0 * eigenvalues.max()), norm / (2.0 * eigenvalues.min()))
    ratio = kl / norm if norm > 0 else None
    return GaussianKlDiagnostic(kl=kl, w2=norm, ratio=ratio, bracket=bracket)


@dataclass(frozen=True)
class LogNoiseResult:
    expectation: float
    classification: NoiseClass

    def to_dict(self) -> dict:
        return {"expectation": self.expectation, "classification": self.classification}


def classify_log_noise(expectation: float, tol: float = 1e-12) -> NoiseClass:
    """Negative: x_k -> 0 almost surely; zero: in probability; positive: a stationary density exists."""
    if expectation < -tol:
        return "as-zero"
    if expectation > tol:
        return "stationary-exists"
    return "ip-zero"


def log_noise_sign(
    noise=None,
    lower: float = 0.0,
    upper: float = 4.0,
    atom: Optional[float] = None,
) -> LogNoiseResult:
    """
    E[log zeta] for a noise density on [lower, upper], integrated as supplied.

    `noise` is any object with a vectorized `pdf` (a frozen scipy distribution); `atom`
    replaces it with a point mass. The log singularity at zeta = 0 is integrated with
    an algebraic-logarithmic quadrature weight.

    Raises:
        QuadratureError: the integral failed its error check
    """
    if atom is not None:
        if atom <= 0:
            raise ValueError("a point-mass noise must sit at a positive value")
        expectation = float(np.log(atom))
    else:
        if noise is None:
            raise ValueError("supply a noise density or a point mass")
        if not upper > lower:
            raise ValueError(f"empty interval [{lower}, {upper}]")
        if lower == 0.0:
            expectation, error = scipy_integrate.quad(
                lambda z: float(noise.pdf(z)), lower, upper, weight="alg-loga", wvar=(0.0, 0.0)
            )
        else:
            expectation, error = scipy_integrate.quad(lambda z: np.log(z) * float(noise.pdf(z)), lower, upper)
        if not np.isfinite(expectation) or error > 1e-8:
            raise QuadratureError(f"log-noise integral did not converge (error estimate {error:.2e})")
    result = LogNoiseResult(expectation, classify_log_noise(expectation))
    logger.debug(f"E[log zeta] = {expectation:.6g} ({result.classification})")
    return result
