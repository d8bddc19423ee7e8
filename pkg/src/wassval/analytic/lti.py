"""
WassVal - LTI bounds
Exact W2 between two stable discrete-time LTI systems started from N(0, P0), with the
spectral upper bound and the sharper square-root bound
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..densities.families import Gaussian
from ..transport.wasserstein import sqrtm_psd, w2_gaussian

logger = logging.getLogger(__name__)

ORDERING_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LtiPair:
    """x_{k+1} = A x_k against x_{k+1} = A_hat x_k, both Schur stable, from N(0, P0)"""

    a: np.ndarray
    a_hat: np.ndarray
    p0: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        a_hat = np.atleast_2d(np.asarray(self.a_hat, dtype=float))
        p0 = np.atleast_2d(np.asarray(self.p0, dtype=float))
        n = a.shape[0]
        if a.shape != (n, n) or a_hat.shape != (n, n) or p0.shape != (n, n):
            raise ValueError("A, A_hat and P0 must be square of the same size")
        for name, matrix in (("A", a), ("A_hat", a_hat)):
            radius = np.max(np.abs(np.linalg.eigvals(matrix)))
            if radius >= 1:
                raise ValueError(f"{name} is not Schur stable (spectral radius {radius:.4g})")
        if not np.allclose(p0, p0.T) or np.linalg.eigvalsh(p0).min() <= 0:
            raise ValueError("P0 must be symmetric positive definite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_hat", a_hat)
        object.__setattr__(self, "p0", p0)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def covariances(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        ak = np.linalg.matrix_power(self.a, k)
        ak_hat = np.linalg.matrix_power(self.a_hat, k)
        pk = ak @ self.p0 @ ak.T
        pk_hat = ak_hat @ self.p0 @ ak_hat.T
        return 0.5 * (pk + pk.T), 0.5 * (pk_hat + pk_hat.T)


@dataclass(frozen=True)
class LtiBounds:
    """W2 at step k with its two upper bounds; `omega` is None when A_hat is singular"""

    k: int
    w2: float
    sharper: float
    omega: Optional[float]
    warnings: list[str] = field(default_factory=list)

    def as_row(self) -> dict:
        return {"k": self.k, "w2": self.w2, "sharper": self.sharper, "omega": self.omega}


def _omega_bound(pair: LtiPair, k: int) -> tuple[Optional[float], list[str]]:
    if np.linalg.cond(pair.a_hat) > 1.0 / np.finfo(float).eps:
        return None, ["A_hat is singular; the spectral bound is undefined"]
    inv_power = np.linalg.matrix_power(np.linalg.inv(pair.a_hat), k)
    inv_norm = np.linalg.norm(inv_power, "fro")
    power_norm = np.linalg.norm(np.linalg.matrix_power(pair.a, k), "fro")
    trace = float(np.trace(pair.p0))
    # complex eigenvalues enter through their moduli
    moduli = np.abs(np.linalg.eigvals(pair.a))
    moduli_hat = np.abs(np.linalg.eigvals(pair.a_hat))
    with np.errstate(divide="ignore"):
        log_product = 2.0 * k * float(np.sum(np.log(moduli)) - np.sum(np.log(moduli_hat)))
    radicand = power_norm ** 2 * inv_norm ** 2 * trace ** 2 - log_product - pair.dim
    if not np.isfinite(radicand) or radicand < 0:
        logger.warning(f"Spectral bound radicand {radicand:.4g} at k={k} is not a nonnegative number")
        return float("nan"), ["OMEGA_RADICAND"]
    return float(np.sqrt(2.0 * trace) * inv_norm * np.sqrt(radicand)), []


def lti_bounds(pair: LtiPair, k: int) -> LtiBounds:
    """
    Exact W2(k) between N(0, A^k P0 A^kT) and N(0, Ahat^k P0 Ahat^kT), the spectral
    bound sqrt(2 tr P0) ||Ahat^-k||_F Omega(k) and the bound ||P_k^1/2 - Phat_k^1/2||_F.

    Raises:
        RuntimeError: W2 exceeds the square-root bound beyond roundoff
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    pk, pk_hat = pair.covariances(k)
    zero = np.zeros(pair.dim)
    w2 = w2_gaussian(Gaussian(zero, pk), Gaussian(zero, pk_hat))
    sharper = float(np.linalg.norm(sqrtm_psd(pk) - sqrtm_psd(pk_hat), "fro"))
    if w2 > sharper + ORDERING_TOL * max(1.0, sharper):
        raise RuntimeError(f"W2 {w2:.6g} exceeds the square-root bound {sharper:.6g} at k={k}")
    omega, warnings = _omega_bound(pair, k)
    return LtiBounds(k, w2, sharper, omega, warnings)


def lti_bound_series(pair: LtiPair, k_max: int) -> list[LtiBounds]:
    """lti_bounds for k = 0..k_max."""
    return [lti_bounds(pair, k) for k in range(k_max + 1)]
