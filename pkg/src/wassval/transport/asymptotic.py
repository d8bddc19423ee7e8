"""
WassVal - Asymptotic gaps
W2 between the stationary output laws of stable system pairs: deterministic linear,
affine, stochastic linear, nonlinear with multiple equilibria vs linear, and two
nonlinear systems
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..densities.families import DiracMixture, Gaussian
from ..dynamics.stationary import is_hurwitz, stationary_linear_sde
from ..errors import NonHurwitzError
from .wasserstein import w2_gaussian, w2_lp

logger = logging.getLogger(__name__)


def _matrix(a) -> np.ndarray:
    return np.atleast_2d(np.asarray(a, dtype=float))


def _require_hurwitz(a: np.ndarray, name: str) -> None:
    if not is_hurwitz(a):
        raise NonHurwitzError(f"{name} is not Hurwitz (eigenvalues {np.linalg.eigvals(a)})")


def _fixed_point_output(a, b, c, d, name: str) -> np.ndarray:
    a = _matrix(a)
    if np.linalg.cond(a) > 1.0 / np.finfo(float).eps:
        raise ValueError(f"{name} is singular; the affine fixed point is undefined")
    return _matrix(c) @ np.linalg.solve(a, np.asarray(b, dtype=float).ravel())


# === Cases ===

@dataclass(frozen=True)
class LinearPairCase:
    """x' = A x, y = C x against its model; both stationary laws are a Dirac at 0"""

    a: np.ndarray
    a_hat: np.ndarray

    def gap(self) -> float:
        _require_hurwitz(_matrix(self.a), "A")
        _require_hurwitz(_matrix(self.a_hat), "A_hat")
        return 0.0


@dataclass(frozen=True)
class AffinePairCase:
    """x' = A x + b, y = C x + d against its model"""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    a_hat: np.ndarray
    b_hat: np.ndarray
    c_hat: np.ndarray
    d_hat: np.ndarray

    def gap(self) -> float:
        true_part = _fixed_point_output(self.a, self.b, self.c, self.d, "A")
        model_part = _fixed_point_output(self.a_hat, self.b_hat, self.c_hat, self.d_hat, "A_hat")
        _require_hurwitz(_matrix(self.a), "A")
        _require_hurwitz(_matrix(self.a_hat), "A_hat")
        offset = np.asarray(self.d, dtype=float).ravel() - np.asarray(self.d_hat, dtype=float).ravel()
        return float(np.linalg.norm(offset - (true_part - model_part)))


@dataclass(frozen=True)
class StochasticLinearPairCase:
    """dx = A x dt + B dbeta, y = C x against its model; stationary laws are Gaussian"""

    a: np.ndarray
    b: np.ndarray
    q: np.ndarray
    c: np.ndarray
    a_hat: np.ndarray
    b_hat: np.ndarray
    q_hat: np.ndarray
    c_hat: np.ndarray

    def output_laws(self) -> tuple[Gaussian, Gaussian]:
        true_state = stationary_linear_sde(self.a, self.b, self.q)
        model_state = stationary_linear_sde(self.a_hat, self.b_hat, self.q_hat)
        c, c_hat = _matrix(self.c), _matrix(self.c_hat)
        true_cov = c @ true_state.cov @ c.T
        model_cov = c_hat @ model_state.cov @ c_hat.T
        true_law = Gaussian(np.zeros(c.shape[0]), 0.5 * (true_cov + true_cov.T))
        model_law = Gaussian(np.zeros(c_hat.shape[0]), 0.5 * (model_cov + model_cov.T))
        return true_law, model_law

    def gap(self) -> float:
        return w2_gaussian(*self.output_laws())


@dataclass(frozen=True)
class NonlinearVsLinearCase:
    """
    Nonlinear system whose stationary output law is a Dirac mixture over its stable
    equilibria, against a stable linear model (Dirac at the origin).
    """

    equilibria: DiracMixture
    a_hat: Optional[np.ndarray] = None

    def gap(self) -> float:
        if self.a_hat is not None:
            _require_hurwitz(_matrix(self.a_hat), "A_hat")
        origin = DiracMixture(np.zeros((1, self.equilibria.dim)), [1.0])
        value, _ = w2_lp(self.equilibria.as_ensemble(), origin.as_ensemble())
        return value


@dataclass(frozen=True)
class NonlinearPairCase:
    """Two Dirac-mixture stationary laws compared by the transportation LP"""

    equilibria: DiracMixture
    equilibria_hat: DiracMixture

    def gap(self) -> float:
        value, _ = w2_lp(self.equilibria.as_ensemble(), self.equilibria_hat.as_ensemble())
        return value


AsymptoticCase = Union[
    LinearPairCase, AffinePairCase, StochasticLinearPairCase, NonlinearVsLinearCase, NonlinearPairCase
]


def asymptotic_gap(case: AsymptoticCase) -> float:
    """W2 between the stationary output laws of a stable system pair."""
    value = case.gap()
    logger.debug(f"Asymptotic gap for {type(case).__name__}: {value:.6g}")
    return value
