"""
WassVal - Particle ensembles
Weighted point clouds representing empirical densities over state or output space
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import get_settings

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ParticleEnsemble:
    """
    Weighted point cloud.

    Points are stored as an (n, d) array; a 1-D input is read as n scalar points.
    Weights are normalized to unit mass on construction (a deviation beyond
    Settings.weight_tol is logged at debug level and corrected).
    """

    points: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2 or points.shape[0] == 0 or points.shape[1] == 0:
            raise ValueError(f"points must be a non-empty (n, d) array, got shape {points.shape}")
        if not np.all(np.isfinite(points)):
            raise ValueError("points must be finite")

        n = points.shape[0]
        if self.weights is None:
            weights = np.full(n, 1.0 / n)
        else:
            weights = np.array(self.weights, dtype=float).ravel()
            if weights.shape[0] != n:
                raise ValueError(f"{weights.shape[0]} weights for {n} points")
            if not np.all(np.isfinite(weights)) or np.any(weights < 0):
                raise ValueError("weights must be finite and nonnegative")
            total = weights.sum()
            if total <= 0:
                raise ValueError("weights must have positive total mass")
            if abs(total - 1.0) > get_settings().weight_tol:
                logger.debug(f"Renormalizing ensemble weights (total mass {total!r})")
            weights = weights / total

        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "weights", _frozen(weights))

    # === Shape ===

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.size

    # === Moments ===

    def mean(self) -> np.ndarray:
        return self.weights @ self.points

    def covariance(self) -> np.ndarray:
        centered = self.points - self.mean()
        return (centered * self.weights[:, None]).T @ centered

    def raw_moment(self, order: int) -> float:
        """First or second raw moment of a 1-D ensemble (weighted sum)."""
        if self.dim != 1:
            raise ValueError("raw moments are defined for 1-D ensembles")
        return float(self.weights @ self.points[:, 0] ** order)

    # === Derived ensembles ===

    def pruned(self) -> "ParticleEnsemble":
        """Drop zero-weight particles."""
        keep = self.weights > 0
        if keep.all():
            return self
        return ParticleEnsemble(self.points[keep], self.weights[keep])

    def merged(self) -> tuple["ParticleEnsemble", np.ndarray]:
        """
        Merge colocated particles, summing their weights.

        Returns:
            The merged ensemble and, for every original particle, the index of the
            merged particle it went into.
        """
        unique, inverse = np.unique(self.points, axis=0, return_inverse=True)
        inverse = inverse.ravel()
        if unique.shape[0] == self.size:
            return self, np.arange(self.size)
        weights = np.bincount(inverse, weights=self.weights, minlength=unique.shape[0])
        return ParticleEnsemble(unique, weights), inverse

    def map_points(self, fn, weights: Optional[np.ndarray] = None) -> "ParticleEnsemble":
        """New ensemble with points fn(points), carrying (or replacing) the weights."""
        return ParticleEnsemble(fn(self.points), self.weights if weights is None else weights)

    @classmethod
    def uniform(cls, points) -> "ParticleEnsemble":
        return cls(points)

    def __repr__(self) -> str:
        return f"ParticleEnsemble(n={self.size}, d={self.dim})"
