"""
WassVal - CDFs and quantiles
Analytic and step CDFs for 1-D laws, their generalized inverses, and raw moments
"""

from abc import ABC, abstractmethod
from typing import Callable, Optional, Union

import numpy as np

from .ensemble import ParticleEnsemble
from .families import DensityFamily, DiracMixture, Empirical, Gaussian, ScaledBeta, UniformBox


class Cdf1D(ABC):
    """Nondecreasing, right-continuous CDF on the real line with its left generalized inverse"""

    @abstractmethod
    def __call__(self, y) -> np.ndarray:
        ...

    @abstractmethod
    def quantile(self, level) -> np.ndarray:
        """inf{y : level <= F(y)} for level in [0, 1]."""


class AnalyticCdf(Cdf1D):
    """CDF given by a closed-form evaluator and its inverse"""

    def __init__(
        self,
        cdf_fn: Callable[[np.ndarray], np.ndarray],
        quantile_fn: Callable[[np.ndarray], np.ndarray],
        support: tuple[float, float] = (-np.inf, np.inf),
        name: str = "analytic",
    ):
        self._cdf = cdf_fn
        self._quantile = quantile_fn
        self.support = support
        self.name = name

    @classmethod
    def from_law(cls, law, name: str = "analytic") -> "AnalyticCdf":
        """Wrap a frozen scipy distribution."""
        return cls(law.cdf, law.ppf, tuple(float(s) for s in law.support()), name)

    def __call__(self, y) -> np.ndarray:
        return np.asarray(self._cdf(np.asarray(y, dtype=float)))

    def quantile(self, level) -> np.ndarray:
        return np.asarray(self._quantile(np.asarray(level, dtype=float)))

    def __repr__(self) -> str:
        return f"AnalyticCdf({self.name})"


class StepCdf(Cdf1D):
    """Right-continuous step CDF of a weighted 1-D point set"""

    def __init__(self, ensemble: ParticleEnsemble):
        if ensemble.dim != 1:
            raise ValueError(f"step CDFs need 1-D ensembles, got dimension {ensemble.dim}")
        order = np.argsort(ensemble.points[:, 0], kind="stable")
        values = ensemble.points[order, 0]
        weights = ensemble.weights[order]
        # merge ties so every jump location is distinct
        self.atoms, inverse = np.unique(values, return_inverse=True)
        self.masses = np.bincount(inverse.ravel(), weights=weights)
        levels = np.cumsum(self.masses)
        levels[-1] = 1.0
        self.levels = levels
        self.support = (float(self.atoms[0]), float(self.atoms[-1]))

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        index = np.searchsorted(self.atoms, y, side="right")
        padded = np.concatenate(([0.0], self.levels))
        return padded[index]

    def quantile(self, level) -> np.ndarray:
        level = np.asarray(level, dtype=float)
        index = np.searchsorted(self.levels, level, side="left")
        return self.atoms[np.clip(index, 0, self.atoms.size - 1)]

    def __repr__(self) -> str:
        return f"StepCdf(atoms={self.atoms.size})"


class GridCdf(Cdf1D):
    """Piecewise-linear CDF of cell masses on a uniform grid (density constant per cell)"""

    def __init__(self, edges: np.ndarray, masses: np.ndarray):
        masses = np.clip(np.asarray(masses, dtype=float), 0.0, None)
        total = masses.sum()
        if total <= 0:
            raise ValueError("grid CDF needs positive mass")
        self.edges = np.asarray(edges, dtype=float)
        levels = np.concatenate(([0.0], np.cumsum(masses / total)))
        levels[-1] = 1.0
        self.levels = levels
        self.support = (float(self.edges[0]), float(self.edges[-1]))

    def __call__(self, y) -> np.ndarray:
        return np.interp(np.asarray(y, dtype=float), self.edges, self.levels, left=0.0, right=1.0)

    def quantile(self, level) -> np.ndarray:
        level = np.asarray(level, dtype=float)
        # first edge whose level reaches `level`, interpolated inside its cell
        index = np.clip(np.searchsorted(self.levels, level, side="left"), 1, self.levels.size - 1)
        lo, hi = self.levels[index - 1], self.levels[index]
        span = np.where(hi > lo, hi - lo, 1.0)
        frac = np.clip((level - lo) / span, 0.0, 1.0)
        return self.edges[index - 1] + frac * (self.edges[index] - self.edges[index - 1])

    def __repr__(self) -> str:
        return f"GridCdf(cells={self.edges.size - 1})"


# === Operations ===

CdfSource = Union[DensityFamily, ParticleEnsemble]


def cdf(source: CdfSource) -> Cdf1D:
    """
    CDF of a 1-D density family or ensemble.

    Analytic CDFs come from scipy (regularized incomplete beta for ScaledBeta and
    Arcsine, error function for Gaussian); ensembles, Dirac mixtures and empirical
    laws get right-continuous step CDFs.

    Raises:
        ValueError: multivariate input
    """
    if isinstance(source, ParticleEnsemble):
        return StepCdf(source)
    if source.dim != 1:
        raise ValueError(f"CDFs are one-dimensional; got a {source.dim}-D {source.kind} law")
    if isinstance(source, Empirical):
        return StepCdf(source.ensemble)
    if isinstance(source, DiracMixture):
        return StepCdf(source.as_ensemble())
    return AnalyticCdf.from_law(source.scipy_law(), name=source.kind)


def quantile(distribution: Cdf1D, level) -> np.ndarray:
    """
    Left generalized inverse inf{y : level <= F(y)}.

    At level 0 the left end of the support is returned (the smallest atom for step CDFs).

    Raises:
        ValueError: level outside [0, 1]
    """
    level_arr = np.asarray(level, dtype=float)
    if np.any(level_arr < 0.0) or np.any(level_arr > 1.0) or np.any(np.isnan(level_arr)):
        raise ValueError("quantile levels must lie in [0, 1]")
    result = distribution.quantile(level_arr)
    return result if np.ndim(level) else float(result)


def raw_moment(source: CdfSource, order: int) -> float:
    """
    First or second raw moment (m10 or m20) of a 1-D family or ensemble.

    Raises:
        ValueError: order outside {1, 2}, multivariate input, or a family without the moment
    """
    if order not in (1, 2):
        raise ValueError("raw_moment supports orders 1 and 2")
    if isinstance(source, ParticleEnsemble):
        return source.raw_moment(order)
    if source.dim != 1:
        raise ValueError("raw moments are defined for 1-D laws")
    if isinstance(source, Empirical):
        return source.ensemble.raw_moment(order)
    if isinstance(source, DiracMixture):
        return float(source.masses @ source.locations[:, 0] ** order)
    if isinstance(source, Gaussian):
        mu, var = float(source.mean[0]), float(source.cov[0, 0])
        return mu if order == 1 else mu ** 2 + var
    if isinstance(source, UniformBox):
        a, b = float(source.lower[0]), float(source.upper[0])
        return (a + b) / 2 if order == 1 else (a * a + b * b + a * b) / 3
    if isinstance(source, ScaledBeta):
        s = source.alpha + source.beta
        m1 = source.alpha / s
        m2 = source.alpha * (source.alpha + 1) / (s * (s + 1))
        a, w = source.lower, source.width
        if order == 1:
            return a + w * m1
        return a * a + 2 * a * w * m1 + w * w * m2
    raise ValueError(f"no closed-form moment for {source.kind}")
