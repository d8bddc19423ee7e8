"""
WassVal - Stationary laws
Long-time densities: Gaussian laws of stable linear SDEs, the closed-form density of
damped Hamiltonian systems with additive noise, Dirac mixtures over the stable
equilibria of deterministic systems, and Gaussian moment propagation for linear systems
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional, Sequence, Union

import numpy as np
from scipy import linalg
from scipy.integrate import trapezoid
from scipy.interpolate import RegularGridInterpolator

from ..config import get_settings
from ..densities.ensemble import ParticleEnsemble
from ..densities.families import DensityFamily, DiracMixture, Gaussian
from ..densities.sampling import sample
from ..errors import DivergentNormalizationError, NonHurwitzError
from .liouville import aligned_steps, rk4_flow
from .models import OdeModel

logger = logging.getLogger(__name__)

LYAPUNOV_RESIDUAL_TOL = 1e-10
BOUNDARY_DECAY_TOL = 1e-8


def _matrix(a) -> np.ndarray:
    return np.atleast_2d(np.asarray(a, dtype=float))


def is_hurwitz(a) -> bool:
    """All eigenvalues strictly in the open left half plane."""
    return bool(np.all(np.linalg.eigvals(_matrix(a)).real < 0))


# === Linear SDE ===

def stationary_linear_sde(a, b, q) -> Gaussian:
    """
    Stationary law N(0, S) of dx = A x dt + B dbeta, E[dbeta dbeta^T] = Q dt.

    S solves A S + S A^T + B Q B^T = 0. An uncontrollable pair (A, B) still yields a
    stationary law, possibly degenerate, and is logged.

    Raises:
        NonHurwitzError: A has an eigenvalue with nonnegative real part
        ValueError: inconsistent dimensions or a Lyapunov residual above 1e-10 (relative)
    """
    a, b, q = _matrix(a), _matrix(b), _matrix(q)
    d = a.shape[0]
    if a.shape != (d, d):
        raise ValueError(f"A must be square, got {a.shape}")
    if b.shape[0] != d:
        b = b.T if b.shape[1] == d else b
    if b.shape[0] != d or q.shape != (b.shape[1], b.shape[1]):
        raise ValueError(f"inconsistent shapes A {a.shape}, B {b.shape}, Q {q.shape}")
    if not is_hurwitz(a):
        raise NonHurwitzError(f"A is not Hurwitz (eigenvalues {np.linalg.eigvals(a)})")

    forcing = b @ q @ b.T
    cov = linalg.solve_continuous_lyapunov(a, -forcing)
    cov = 0.5 * (cov + cov.T)
    residual = np.linalg.norm(a @ cov + cov @ a.T + forcing)
    scale = max(1.0, np.linalg.norm(forcing))
    if residual > LYAPUNOV_RESIDUAL_TOL * scale:
        raise ValueError(f"Lyapunov residual {residual:.3e} above tolerance")

    controllability = np.hstack([np.linalg.matrix_power(a, k) @ b for k in range(d)])
    if np.linalg.matrix_rank(controllability) < d:
        logger.warning("(A, B) is not controllable; the stationary covariance may be singular")
    return Gaussian(np.zeros(d), cov)


# === Damped Hamiltonian ===

@dataclass(frozen=True, eq=False)
class DensityGrid2D:
    """Normalized density values on a tensor grid (x1 along rows, x2 along columns)."""

    x1: np.ndarray
    x2: np.ndarray
    values: np.ndarray

    def pdf(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        interpolator = RegularGridInterpolator(
            (self.x1, self.x2), self.values, bounds_error=False, fill_value=0.0
        )
        return interpolator(points)

    def integral(self) -> float:
        return float(trapezoid(trapezoid(self.values, self.x2, axis=1), self.x1))

    def cell_masses(self) -> np.ndarray:
        """Masses of the grid nodes under the tensor trapezoid rule."""
        w1 = _trapezoid_weights(self.x1)
        w2 = _trapezoid_weights(self.x2)
        return self.values * np.outer(w1, w2)

    def sample(self, n: int, seed: int = 0) -> ParticleEnsemble:
        """
        n equally weighted points drawn from the grid law: a node is chosen by its
        trapezoid mass and jittered uniformly within its cell.
        """
        rng = np.random.default_rng(seed)
        masses = self.cell_masses().ravel()
        index = rng.choice(masses.size, size=n, p=masses / masses.sum())
        i, j = np.unravel_index(index, self.values.shape)
        h1 = np.gradient(self.x1)[i]
        h2 = np.gradient(self.x2)[j]
        points = np.column_stack([
            self.x1[i] + h1 * (rng.random(n) - 0.5),
            self.x2[j] + h2 * (rng.random(n) - 0.5),
        ])
        return ParticleEnsemble(points)

    def marginal_x1(self) -> np.ndarray:
        return trapezoid(self.values, self.x2, axis=1)


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    h = np.diff(x)
    weights = np.zeros(x.size)
    weights[:-1] += 0.5 * h
    weights[1:] += 0.5 * h
    return weights


def stationary_hamiltonian(
    potential: Callable[[np.ndarray], np.ndarray],
    c: float,
    q: float,
    x1_grid: Sequence[float],
    x2_grid: Sequence[float],
) -> DensityGrid2D:
    """
    Stationary density of x1' = x2, x2' = -U'(x1) - c x2 + noise on x2, proportional to
    exp(-(c/Q) (U(x1) + x2^2 / 2)) and normalized by the trapezoid rule.

    Q is half the Wiener covariance rate of the noise on x2.

    Raises:
        ValueError: c or Q not positive, or a grid with fewer than 3 points
        DivergentNormalizationError: the density has not decayed at the grid boundary
    """
    if c <= 0 or q <= 0:
        raise ValueError("damping c and noise strength Q must be positive")
    x1 = np.asarray(x1_grid, dtype=float)
    x2 = np.asarray(x2_grid, dtype=float)
    if x1.size < 3 or x2.size < 3:
        raise ValueError("grids need at least three points")

    energy = np.asarray(potential(x1), dtype=float)[:, None] + 0.5 * x2[None, :] ** 2
    exponent = -(c / q) * (energy - energy.min())
    values = np.exp(exponent)
    boundary = max(values[0].max(), values[-1].max(), values[:, 0].max(), values[:, -1].max())
    if not np.isfinite(values).all() or boundary > BOUNDARY_DECAY_TOL:
        raise DivergentNormalizationError(
            f"stationary density is {boundary:.3e} of its peak at the grid boundary; widen the grid"
        )
    total = float(trapezoid(trapezoid(values, x2, axis=1), x1))
    return DensityGrid2D(x1, x2, values / total)


# === Dirac mixtures over attractors ===

@dataclass(frozen=True)
class DiracStationaryResult:
    """Stationary Dirac mixture with the trajectories that could not be classified"""

    law: DiracMixture
    unconverged: int
    unconverged_mass: float
    counts: tuple[int, ...] = field(default_factory=tuple)


def nearest_attractor(attractors: np.ndarray, radius: float) -> Callable[[np.ndarray], np.ndarray]:
    """Classifier returning the index of the attractor within `radius`, or -1."""
    def classify(points: np.ndarray) -> np.ndarray:
        distance = np.linalg.norm(points[:, None, :] - attractors[None, :, :], axis=2)
        index = np.argmin(distance, axis=1)
        return np.where(distance[np.arange(points.shape[0]), index] <= radius, index, -1)
    return classify


def dirac_stationary(
    model: OdeModel,
    xi0: DensityFamily,
    attractors,
    roa_classifier: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    n: Optional[int] = None,
    seed: int = 0,
    scheme: str = "halton",
    horizon: Optional[float] = None,
    radius: Optional[float] = None,
) -> DiracStationaryResult:
    """
    Mass of xi0 falling into each attractor's region of attraction.

    Without `roa_classifier`, samples are integrated with RK4 to `horizon` and snapped
    to the nearest attractor within `radius`. Samples the classifier returns -1 for
    are counted as unconverged and excluded; the remaining masses are normalized.

    Raises:
        ValueError: no sample could be classified
    """
    settings = get_settings()
    n = n or settings.default_nu
    horizon = settings.roa_horizon if horizon is None else horizon
    radius = settings.roa_radius if radius is None else radius

    attractors = np.asarray(attractors, dtype=float)
    if attractors.ndim == 1:
        attractors = attractors[:, None]
    ensemble = sample(xi0, n, seed=seed, scheme=scheme)

    if roa_classifier is None:
        final = rk4_flow(model, ensemble.points, horizon)
        labels = nearest_attractor(attractors, radius)(final)
    else:
        labels = np.asarray(roa_classifier(ensemble.points), dtype=int)

    classified = labels >= 0
    unconverged = int((~classified).sum())
    unconverged_mass = float(ensemble.weights[~classified].sum())
    if not classified.any():
        raise ValueError("no sample converged to an attractor")
    masses = np.bincount(labels[classified], weights=ensemble.weights[classified], minlength=len(attractors))
    masses = masses / masses.sum()
    counts = tuple(int(c) for c in np.bincount(labels[classified], minlength=len(attractors)))
    if unconverged:
        logger.warning(f"{unconverged} of {n} trajectories did not reach an attractor within t={horizon:g}")
    logger.debug(f"Attractor masses {np.round(masses, 6).tolist()}")
    return DiracStationaryResult(DiracMixture(attractors, masses), unconverged, unconverged_mass, counts)


# === Linear Gaussian moments ===

@dataclass(frozen=True, eq=False)
class GaussianMoments:
    """Output means and covariances of a linear system at each reporting time or step"""

    times: np.ndarray
    means: np.ndarray
    covs: np.ndarray

    def law(self, index: int) -> Gaussian:
        cov = 0.5 * (self.covs[index] + self.covs[index].T)
        return Gaussian(self.means[index], cov)


def linear_gaussian_moments(
    a,
    b,
    c,
    q,
    mu0,
    sigma0,
    horizon: Union[int, Sequence[float]],
    mode: Literal["continuous", "discrete"] = "continuous",
    dt: Optional[float] = None,
) -> GaussianMoments:
    """
    Moments of y = C x for a linear system driven by Gaussian noise.

    Continuous mode integrates m' = A m and S' = A S + S A^T + B Q B^T with RK4 and
    reports at the times in `horizon`. Discrete mode iterates m_{k+1} = A m_k,
    S_{k+1} = A S_k A^T + B Q B^T for k = 0..horizon.
    """
    a, c = _matrix(a), _matrix(c)
    d = a.shape[0]
    b = np.zeros((d, 1)) if b is None else _matrix(b).reshape(d, -1)
    q = np.eye(b.shape[1]) if q is None else _matrix(q)
    mu = np.asarray(mu0, dtype=float).reshape(d)
    cov = _matrix(sigma0)
    if a.shape != (d, d) or cov.shape != (d, d) or c.shape[1] != d or q.shape != (b.shape[1],) * 2:
        raise ValueError("inconsistent dimensions among A, B, C, Q, mu0 and Sigma0")
    forcing = b @ q @ b.T

    means, covs = [], []
    if mode == "discrete":
        steps = int(horizon)
        if steps < 0:
            raise ValueError("discrete horizon must be a nonnegative step count")
        times = np.arange(steps + 1, dtype=float)
        for _ in range(steps + 1):
            means.append(c @ mu)
            covs.append(c @ cov @ c.T)
            mu = a @ mu
            cov = a @ cov @ a.T + forcing
    elif mode == "continuous":
        times = np.asarray(horizon, dtype=float).ravel()
        if times.size == 0 or times[0] < 0 or np.any(np.diff(times) < 0):
            raise ValueError("continuous horizon must be nondecreasing times >= 0")
        dt = dt or get_settings().ode_dt

        def rate(m, s):
            return a @ m, a @ s + s @ a.T + forcing

        now = 0.0
        for t in times:
            steps, h = aligned_steps(now, float(t), dt)
            for _ in range(steps):
                k1 = rate(mu, cov)
                k2 = rate(mu + 0.5 * h * k1[0], cov + 0.5 * h * k1[1])
                k3 = rate(mu + 0.5 * h * k2[0], cov + 0.5 * h * k2[1])
                k4 = rate(mu + h * k3[0], cov + h * k3[1])
                mu = mu + (h / 6.0) * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
                cov = cov + (h / 6.0) * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
            now = float(t)
            means.append(c @ mu)
            covs.append(c @ cov @ c.T)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return GaussianMoments(times, np.array(means), np.array(covs))
