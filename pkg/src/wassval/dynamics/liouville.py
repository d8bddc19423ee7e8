"""
WassVal - Liouville propagation
Method of characteristics for the Liouville equation: each particle follows the
flow and its density value decays with the divergence integral accumulated along
the same fixed-step RK4 grid.
"""

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from ..config import get_settings
from ..densities.ensemble import ParticleEnsemble
from ..densities.families import DensityFamily, DiracMixture, Empirical
from ..densities.sampling import sample
from ..errors import PropagationError
from .models import OdeModel

logger = logging.getLogger(__name__)

PmfMode = Literal["carried", "density"]


@dataclass(frozen=True, eq=False)
class WeightedDensityEnsemble:
    """
    Particles with their density values at one time.

    `divergence_integral` holds the integral of div f along each characteristic, so
    density = initial density * exp(-divergence_integral).
    """

    time: float
    ensemble: ParticleEnsemble
    density: Optional[np.ndarray] = None
    divergence_integral: Optional[np.ndarray] = None

    @property
    def points(self) -> np.ndarray:
        return self.ensemble.points

    @property
    def weights(self) -> np.ndarray:
        return self.ensemble.weights

    def density_pmf(self) -> ParticleEnsemble:
        """Ensemble re-weighted by the propagated density values."""
        if self.density is None:
            raise ValueError("no density values are tracked for this ensemble")
        return ParticleEnsemble(self.ensemble.points, self.density)

    def mass_estimate(self, cell_volume: float) -> float:
        """
        Total mass from density values times transported particle volumes; each
        particle starts with `cell_volume` and its volume grows by exp(divergence integral).
        """
        if self.density is None or self.divergence_integral is None:
            raise ValueError("mass estimates need density values and divergence integrals")
        return float(np.sum(self.density * cell_volume * np.exp(self.divergence_integral)))


def aligned_steps(start: float, stop: float, dt: float) -> tuple[int, float]:
    """Number of equal RK4 steps covering [start, stop] with step at most dt."""
    span = stop - start
    if span <= 0:
        return 0, 0.0
    steps = max(1, int(np.ceil(span / dt - 1e-9)))
    return steps, span / steps


def _check_finite(time: float, *arrays: np.ndarray) -> None:
    for array in arrays:
        bad = ~np.isfinite(array)
        if bad.any():
            index = int(np.argwhere(bad.reshape(bad.shape[0], -1).any(axis=1))[0, 0])
            raise PropagationError(
                "non-finite state or density during integration",
                location=f"t={time:.6g}, particle={index}",
            )


def rk4_flow(model: OdeModel, points: np.ndarray, duration: float, dt: Optional[float] = None) -> np.ndarray:
    """Positions after flowing for `duration` with fixed-step RK4 (no density tracking)."""
    dt = dt or get_settings().ode_dt
    x = np.array(points, dtype=float)
    steps, h = aligned_steps(0.0, duration, dt)
    for step in range(steps):
        k1 = model.f(x)
        k2 = model.f(x + 0.5 * h * k1)
        k3 = model.f(x + 0.5 * h * k2)
        k4 = model.f(x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite((step + 1) * h, x)
    return x


def _rk4_augmented(model: OdeModel, x: np.ndarray, ell: np.ndarray, h: float):
    """One RK4 step of (x, l)' = (f(x), div f(x))."""
    k1x, k1l = model.f(x), model.div(x)
    x2 = x + 0.5 * h * k1x
    k2x, k2l = model.f(x2), model.div(x2)
    x3 = x + 0.5 * h * k2x
    k3x, k3l = model.f(x3), model.div(x3)
    x4 = x + h * k3x
    k4x, k4l = model.f(x4), model.div(x4)
    x_next = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
    ell_next = ell + (h / 6.0) * (k1l + 2.0 * k2l + 2.0 * k3l + k4l)
    return x_next, ell_next


def _initial_density(initial: DensityFamily, points: np.ndarray) -> Optional[np.ndarray]:
    if isinstance(initial, (DiracMixture, Empirical)):
        return None
    return np.asarray(initial.pdf(points), dtype=float).reshape(points.shape[0])


def propagate_liouville(
    model: OdeModel,
    initial: DensityFamily,
    n: int,
    t_grid: Sequence[float],
    dt: Optional[float] = None,
    seed: int = 0,
    scheme: str = "halton",
    pmf: PmfMode = "carried",
    ensemble: Optional[ParticleEnsemble] = None,
) -> list[WeightedDensityEnsemble]:
    """
    Propagate an initial density through an ODE by the method of characteristics.

    Particles are drawn from `initial` (or taken from `ensemble`) and integrated with
    fixed-step RK4; each interval between reporting times is split into equal steps of
    at most dt. Density values follow xi0(x0) * exp(-integral of div f).

    Args:
        model: ODE model (drift of parameter components must vanish)
        initial: Initial density family
        n: Number of particles
        t_grid: Nondecreasing reporting times >= 0
        dt: RK4 step (Settings.ode_dt when omitted)
        seed: Sampling seed
        scheme: "halton", "pseudo" or "quantile"
        pmf: "carried" keeps the sampling weights; "density" re-weights each snapshot
            by its propagated density values
        ensemble: Explicit initial particles (overrides sampling)

    Returns:
        One WeightedDensityEnsemble per reporting time

    Raises:
        PropagationError: non-finite state or density (with time and particle index)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    times = np.asarray(t_grid, dtype=float)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) < 0):
        raise ValueError("t_grid must be a nonempty nondecreasing list of times >= 0")
    if pmf not in ("carried", "density"):
        raise ValueError(f"unknown pmf mode {pmf!r}")
    dt = dt or get_settings().ode_dt

    start = ensemble if ensemble is not None else sample(initial, n, seed=seed, scheme=scheme)
    if start.dim != model.dim:
        raise ValueError(f"initial dimension {start.dim} does not match model dimension {model.dim}")
    model.check_parameter_block(start.points)

    density0 = _initial_density(initial, start.points)
    if pmf == "density" and density0 is None:
        raise ValueError(f"pmf='density' needs an initial law with a density, got {initial.kind}")

    x = np.array(start.points)
    ell = np.zeros(start.size)
    now = 0.0
    snapshots = []
    for t in times:
        steps, h = aligned_steps(now, float(t), dt)
        for step in range(steps):
            x, ell = _rk4_augmented(model, x, ell, h)
            _check_finite(now + (step + 1) * h, x, ell)
        now = float(t)

        density = None if density0 is None else density0 * np.exp(-ell)
        if density is not None:
            _check_finite(now, density)
        weights = start.weights if pmf == "carried" else density
        snapshots.append(
            WeightedDensityEnsemble(
                time=now,
                ensemble=ParticleEnsemble(x.copy(), weights),
                density=density,
                divergence_integral=ell.copy(),
            )
        )
    logger.debug(f"Liouville propagation of {start.size} particles through {model.name} to t={now:g}")
    return snapshots
