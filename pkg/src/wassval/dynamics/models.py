"""
WassVal - Dynamics models
Vectorized ODE, SDE and map models. Every evaluator takes an (n, d) array of states
and returns one row per state.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import stats

Evaluator = Callable[[np.ndarray], np.ndarray]

_FD_SCALE = np.cbrt(np.finfo(float).eps)


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[:, None] if x.ndim == 1 else x


@dataclass(frozen=True)
class OutputBranch:
    """
    One inverse branch of an output map h.

    `inverse` maps outputs (n, p) to states (n, d); `jacobian_det` returns det(dh/dx)
    at states (n, d).
    """

    inverse: Evaluator
    jacobian_det: Evaluator


def finite_difference_divergence(drift: Evaluator, x: np.ndarray) -> np.ndarray:
    """Central-difference divergence with step cbrt(eps) * max(1, |x_k|) per axis."""
    x = _rows(x)
    total = np.zeros(x.shape[0])
    for k in range(x.shape[1]):
        h = _FD_SCALE * np.maximum(1.0, np.abs(x[:, k]))
        forward = x.copy()
        backward = x.copy()
        forward[:, k] += h
        backward[:, k] -= h
        total += (_rows(drift(forward))[:, k] - _rows(drift(backward))[:, k]) / (forward[:, k] - backward[:, k])
    return total


# === Continuous time ===

@dataclass(frozen=True)
class OdeModel:
    """
    x' = f(x) on an extended state of dimension `dim`; the last `n_params` components
    are parameters whose drift is identically zero.
    """

    dim: int
    drift: Evaluator
    divergence: Optional[Evaluator] = None
    output: Optional[Evaluator] = None
    output_branches: tuple[OutputBranch, ...] = ()
    n_params: int = 0
    name: str = "ode"

    def f(self, x: np.ndarray) -> np.ndarray:
        return _rows(self.drift(_rows(x)))

    def div(self, x: np.ndarray) -> np.ndarray:
        x = _rows(x)
        if self.divergence is not None:
            return np.asarray(self.divergence(x), dtype=float).reshape(x.shape[0])
        return finite_difference_divergence(self.drift, x)

    def observe(self, x: np.ndarray) -> np.ndarray:
        x = _rows(x)
        return x if self.output is None else _rows(self.output(x))

    def check_parameter_block(self, x: np.ndarray) -> None:
        if self.n_params == 0:
            return
        block = self.f(x)[:, self.dim - self.n_params:]
        if np.any(block != 0):
            raise ValueError(f"{self.name}: drift of the parameter components must be identically zero")


@dataclass(frozen=True)
class SdeModel:
    """
    dx = f(x) dt + g(x) dbeta with E[dbeta dbeta^T] = diag(noise_rates) dt.

    `diffusion` is a constant (d, w) matrix or an evaluator returning (n, d, w).
    """

    dim: int
    drift: Evaluator
    diffusion: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]
    noise_rates: np.ndarray
    output: Optional[Evaluator] = None
    name: str = "sde"

    def __post_init__(self):
        rates = np.atleast_1d(np.asarray(self.noise_rates, dtype=float))
        if rates.ndim == 2:
            if np.any(rates != np.diag(np.diag(rates))):
                raise ValueError("noise rate matrix must be diagonal")
            rates = np.diag(rates).copy()
        if np.any(rates <= 0):
            raise ValueError("noise rates must be positive")
        object.__setattr__(self, "noise_rates", rates)
        if not callable(self.diffusion):
            g = np.atleast_2d(np.asarray(self.diffusion, dtype=float))
            if g.shape != (self.dim, rates.size):
                raise ValueError(f"diffusion shape {g.shape} does not match ({self.dim}, {rates.size})")
            object.__setattr__(self, "diffusion", g)

    @property
    def noise_dim(self) -> int:
        return self.noise_rates.size

    def f(self, x: np.ndarray) -> np.ndarray:
        return _rows(self.drift(_rows(x)))

    def coupling(self, x: np.ndarray) -> np.ndarray:
        x = _rows(x)
        if callable(self.diffusion):
            return np.asarray(self.diffusion(x), dtype=float).reshape(x.shape[0], self.dim, self.noise_dim)
        return np.broadcast_to(self.diffusion, (x.shape[0], self.dim, self.noise_dim))

    def observe(self, x: np.ndarray) -> np.ndarray:
        x = _rows(x)
        return x if self.output is None else _rows(self.output(x))


# === Discrete time ===

@dataclass(frozen=True)
class DeterministicMap:
    """
    x_{k+1} = T(x_k) on a compact interval.

    `analytic` names a map with a closed-form Perron-Frobenius operator
    ("chebyshev" or "logistic").
    """

    transform: Evaluator
    domain: Optional[tuple[float, float]] = None
    analytic: Optional[str] = None
    output: Optional[Evaluator] = None
    name: str = "map"

    def step(self, x: np.ndarray, rng: Optional[np.random.Generator] = None) -> np.ndarray:
        return np.asarray(self.transform(x), dtype=float)

    def observe(self, x: np.ndarray) -> np.ndarray:
        x = _rows(x)
        return x if self.output is None else _rows(self.output(x))


@dataclass(frozen=True)
class MultiplicativeNoiseMap:
    """x_{k+1} = zeta_k S(x_k), zeta_k drawn i.i.d. from `noise`"""

    state_map: Evaluator
    noise: object = field(default_factory=lambda: stats.norm())
    domain: Optional[tuple[float, float]] = None
    name: str = "multiplicative"

    def kernel(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """K(x | y) = phi(x / S(y)) / |S(y)|, zero where S(y) = 0."""
        s = np.asarray(self.state_map(y), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = self.noise.pdf(x / s) / np.abs(s)
        return np.where(s != 0, value, 0.0)

    def step(self, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        zeta = self.noise.rvs(size=np.shape(x), random_state=rng)
        return zeta * np.asarray(self.state_map(x), dtype=float)

    def observe(self, x: np.ndarray) -> np.ndarray:
        return _rows(x)


@dataclass(frozen=True)
class AdditiveNoiseMap:
    """x_{k+1} = S(x_k) + zeta_k, zeta_k drawn i.i.d. from `noise`"""

    state_map: Evaluator
    noise: object = field(default_factory=lambda: stats.norm())
    domain: Optional[tuple[float, float]] = None
    name: str = "additive"

    def kernel(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """K(x | y) = phi(x - S(y))."""
        return self.noise.pdf(x - np.asarray(self.state_map(y), dtype=float))

    def step(self, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        zeta = self.noise.rvs(size=np.shape(x), random_state=rng)
        return np.asarray(self.state_map(x), dtype=float) + zeta

    def observe(self, x: np.ndarray) -> np.ndarray:
        return _rows(x)


MapModel = Union[DeterministicMap, MultiplicativeNoiseMap, AdditiveNoiseMap]
DynamicsModel = Union[OdeModel, SdeModel, DeterministicMap, MultiplicativeNoiseMap, AdditiveNoiseMap]
