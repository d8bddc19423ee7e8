"""
WassVal - Sampling
Pseudo-random, Halton and quantile-grid ensembles drawn from density families
"""

import logging
from typing import Literal

import numpy as np
from scipy import stats
from scipy.stats import qmc

from .ensemble import ParticleEnsemble
from .families import DensityFamily, DiracMixture, Empirical, Gaussian, ScaledBeta, UniformBox

logger = logging.getLogger(__name__)

Scheme = Literal["pseudo", "halton", "quantile"]
SCHEMES = ("pseudo", "halton", "quantile")


def unit_points(n: int, dim: int, seed: int, scheme: str) -> np.ndarray:
    """
    n points in the open unit cube.

    Halton points use prime bases 2, 3, 5, ... without scrambling; the leading point
    (the origin) is skipped so every coordinate lies strictly inside (0, 1). The
    quantile scheme is the 1-D midpoint grid (k - 1/2) / n.
    """
    if scheme == "pseudo":
        rng = np.random.default_rng(seed)
        return rng.random((n, dim))
    if scheme == "halton":
        engine = qmc.Halton(d=dim, scramble=False)
        engine.fast_forward(1)
        return engine.random(n)
    if scheme == "quantile":
        if dim != 1:
            raise ValueError("the quantile scheme is one-dimensional")
        return ((np.arange(n) + 0.5) / n)[:, None]
    raise ValueError(f"unknown sampling scheme {scheme!r} (expected one of {SCHEMES})")


def _matrix_root(cov: np.ndarray) -> np.ndarray:
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    return eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))


def sample(family: DensityFamily, n: int, seed: int = 0, scheme: Scheme = "pseudo") -> ParticleEnsemble:
    """
    Draw n equally weighted points from a density family.

    Pseudo-random draws use numpy's default generator seeded with `seed`; Halton
    and quantile points are deterministic and mapped through the inverse CDF.

    Args:
        family: Law to sample (not Empirical)
        n: Number of points, n >= 1
        seed: Generator seed (pseudo scheme)
        scheme: "pseudo", "halton" or "quantile"

    Returns:
        ParticleEnsemble with weights 1/n
    """
    if n < 1:
        raise ValueError("sample size must be >= 1")
    if isinstance(family, Empirical):
        raise ValueError("empirical laws are not resampled; use the ensemble directly")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown sampling scheme {scheme!r} (expected one of {SCHEMES})")

    if isinstance(family, DiracMixture):
        u = unit_points(n, 1, seed, scheme)[:, 0]
        index = np.searchsorted(np.cumsum(family.masses), u, side="right")
        index = np.clip(index, 0, family.masses.size - 1)
        return ParticleEnsemble(family.locations[index])

    if isinstance(family, Gaussian):
        if scheme == "pseudo":
            z = np.random.default_rng(seed).standard_normal((n, family.dim))
        else:
            z = stats.norm.ppf(unit_points(n, family.dim, seed, scheme))
        return ParticleEnsemble(family.mean + z @ _matrix_root(family.cov).T)

    if isinstance(family, UniformBox):
        u = unit_points(n, family.dim, seed, scheme)
        return ParticleEnsemble(family.lower + u * (family.upper - family.lower))

    if isinstance(family, ScaledBeta):
        law = family.scipy_law()
        if scheme == "pseudo":
            points = law.rvs(size=n, random_state=np.random.default_rng(seed))
        else:
            points = law.ppf(unit_points(n, 1, seed, scheme)[:, 0])
        return ParticleEnsemble(np.asarray(points, dtype=float)[:, None])

    raise ValueError(f"sampling is not supported for {family.kind} with scheme {scheme!r}")
