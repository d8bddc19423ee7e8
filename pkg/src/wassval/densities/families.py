"""
WassVal - Density families
Closed-form density descriptors used for initial, stationary and measured laws
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats

from ..config import get_settings
from ..errors import IndefiniteCovarianceError
from .ensemble import ParticleEnsemble


def _as_points(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if dim == 1 and x.ndim <= 1:
        return x.reshape(-1, 1)
    return np.atleast_2d(x)


class DensityFamily(ABC):
    """Base class for density descriptors"""

    kind: str = "family"

    @property
    @abstractmethod
    def dim(self) -> int:
        ...

    @abstractmethod
    def pdf(self, x) -> np.ndarray:
        """Density at points x, shape (n, d) or (n,) for 1-D families."""

    def scipy_law(self):
        """Frozen scipy distribution for 1-D families that have one."""
        raise NotImplementedError(f"{self.kind} has no scipy counterpart")

    def describe(self) -> dict:
        return {"kind": self.kind}


# === Gaussian ===

@dataclass(frozen=True, eq=False)
class Gaussian(DensityFamily):
    """Gaussian N(mean, cov); cov must be symmetric positive semidefinite"""

    mean: np.ndarray
    cov: np.ndarray
    kind: str = field(default="gaussian", init=False)

    def __post_init__(self):
        mean = np.atleast_1d(np.array(self.mean, dtype=float))
        cov = np.atleast_2d(np.array(self.cov, dtype=float))
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"covariance shape {cov.shape} does not match mean of size {mean.size}")
        if not np.allclose(cov, cov.T, atol=1e-12, rtol=0):
            raise ValueError("covariance must be symmetric")
        if np.linalg.eigvalsh(cov).min() < -get_settings().psd_tol:
            raise IndefiniteCovarianceError("covariance has a negative eigenvalue")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @classmethod
    def isotropic(cls, sigma: float, dim: int, center: Optional[np.ndarray] = None) -> "Gaussian":
        center = np.zeros(dim) if center is None else center
        return cls(center, sigma ** 2 * np.eye(dim))

    @property
    def dim(self) -> int:
        return self.mean.size

    def pdf(self, x) -> np.ndarray:
        law = stats.multivariate_normal(self.mean, self.cov, allow_singular=True)
        return np.atleast_1d(law.pdf(_as_points(x, self.dim)))

    def scipy_law(self):
        if self.dim != 1:
            raise ValueError("only 1-D Gaussians have a scalar law")
        return stats.norm(loc=self.mean[0], scale=np.sqrt(self.cov[0, 0]))

    def describe(self) -> dict:
        return {"kind": self.kind, "mean": self.mean.tolist(), "cov": self.cov.tolist()}


# === Uniform box ===

@dataclass(frozen=True, eq=False)
class UniformBox(DensityFamily):
    """Uniform density on the axis-aligned box [lower, upper]"""

    lower: np.ndarray
    upper: np.ndarray
    kind: str = field(default="uniform", init=False)

    def __post_init__(self):
        lower = np.atleast_1d(np.array(self.lower, dtype=float))
        upper = np.atleast_1d(np.array(self.upper, dtype=float))
        if lower.shape != upper.shape:
            raise ValueError("lower and upper bounds must have the same length")
        if np.any(upper <= lower):
            raise ValueError("uniform box needs upper > lower on every axis")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def volume(self) -> float:
        return float(np.prod(self.upper - self.lower))

    def pdf(self, x) -> np.ndarray:
        points = _as_points(x, self.dim)
        inside = np.all((points >= self.lower) & (points <= self.upper), axis=1)
        return np.where(inside, 1.0 / self.volume, 0.0)

    def scipy_law(self):
        if self.dim != 1:
            raise ValueError("only 1-D boxes have a scalar law")
        return stats.uniform(loc=self.lower[0], scale=self.upper[0] - self.lower[0])

    def describe(self) -> dict:
        return {"kind": self.kind, "lower": self.lower.tolist(), "upper": self.upper.tolist()}


# === Scaled beta ===

@dataclass(frozen=True)
class ScaledBeta(DensityFamily):
    """Beta(alpha, beta) law stretched onto [lower, upper]"""

    alpha: float
    beta: float
    lower: float = 0.0
    upper: float = 1.0
    kind: str = field(default="beta", init=False)

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("beta shape parameters must be positive")
        if not self.upper > self.lower:
            raise ValueError("beta support needs upper > lower")

    @property
    def dim(self) -> int:
        return 1

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def scipy_law(self):
        return stats.beta(self.alpha, self.beta, loc=self.lower, scale=self.width)

    def pdf(self, x) -> np.ndarray:
        return self.scipy_law().pdf(np.asarray(x, dtype=float).ravel())

    def describe(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "beta": self.beta,
                "lower": self.lower, "upper": self.upper}


class Arcsine(ScaledBeta):
    """Arcsine law on [lower, upper], i.e. ScaledBeta(1/2, 1/2, [lower, upper])"""

    def __init__(self, lower: float = -1.0, upper: float = 1.0):
        super().__init__(0.5, 0.5, lower, upper)
        object.__setattr__(self, "kind", "arcsine")

    def describe(self) -> dict:
        return {"kind": self.kind, "lower": self.lower, "upper": self.upper}


# === Dirac mixture ===

@dataclass(frozen=True, eq=False)
class DiracMixture(DensityFamily):
    """Convex combination of point masses"""

    locations: np.ndarray
    masses: np.ndarray
    kind: str = field(default="dirac", init=False)

    def __post_init__(self):
        locations = np.array(self.locations, dtype=float)
        if locations.ndim == 1:
            locations = locations[:, None]
        masses = np.array(self.masses, dtype=float).ravel()
        if masses.size != locations.shape[0]:
            raise ValueError("one mass per location is required")
        if np.any(masses < 0) or abs(masses.sum() - 1.0) > get_settings().weight_tol:
            raise ValueError("Dirac masses must be nonnegative and sum to 1")
        locations.setflags(write=False)
        masses.setflags(write=False)
        object.__setattr__(self, "locations", locations)
        object.__setattr__(self, "masses", masses)

    @property
    def dim(self) -> int:
        return self.locations.shape[1]

    def pdf(self, x) -> np.ndarray:
        raise ValueError("a Dirac mixture has no density function")

    def as_ensemble(self) -> ParticleEnsemble:
        return ParticleEnsemble(self.locations, self.masses)

    def describe(self) -> dict:
        return {"kind": self.kind, "locations": self.locations.tolist(),
                "masses": self.masses.tolist()}


# === Empirical ===

@dataclass(frozen=True, eq=False)
class Empirical(DensityFamily):
    """A particle ensemble viewed as a density descriptor"""

    ensemble: ParticleEnsemble
    kind: str = field(default="empirical", init=False)

    @property
    def dim(self) -> int:
        return self.ensemble.dim

    def pdf(self, x) -> np.ndarray:
        raise ValueError("an empirical law has no density function")

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.ensemble.size}
