"""
WassVal - Euler-Maruyama propagation
Monte Carlo propagation of SDE ensembles
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..config import get_settings
from ..densities.ensemble import ParticleEnsemble
from ..densities.families import DensityFamily
from ..densities.sampling import sample
from ..errors import PropagationError
from .liouville import aligned_steps
from .models import SdeModel

logger = logging.getLogger(__name__)

NOISE_BLOCK = 256


def propagate_em(
    model: SdeModel,
    initial: DensityFamily,
    n: int,
    t_grid: Sequence[float],
    dt: Optional[float] = None,
    seed: int = 0,
    scheme: str = "pseudo",
    ensemble: Optional[ParticleEnsemble] = None,
) -> list[ParticleEnsemble]:
    """
    Euler-Maruyama trajectories of an SDE reported at the times in t_grid.

    Initial particles and Wiener increments come from independent child streams of
    `seed`, and every particle draws its increments from its own child of the noise
    stream, so a fixed seed reproduces the ensembles bit for bit and particle i
    follows the same path whatever the ensemble size. Increments have covariance
    diag(noise_rates) * h.

    Raises:
        ValueError: dt <= 0 or dt larger than the smallest reporting interval
        PropagationError: non-finite state (with time and particle index)
    """
    times = np.asarray(t_grid, dtype=float)
    if times.size == 0 or times[0] < 0 or np.any(np.diff(times) < 0):
        raise ValueError("t_grid must be a nonempty nondecreasing list of times >= 0")
    dt = dt or get_settings().em_dt
    if dt <= 0:
        raise ValueError("dt must be positive")
    spacing = np.diff(np.concatenate(([0.0], times)))
    positive = spacing[spacing > 0]
    if positive.size and dt > positive.min() + 1e-12:
        raise ValueError(f"dt={dt} exceeds the smallest reporting interval {positive.min()}")

    sample_seed, noise_seed = np.random.SeedSequence(seed).spawn(2)
    if ensemble is None:
        ensemble = sample(initial, n, seed=int(sample_seed.generate_state(1)[0]), scheme=scheme)
    if ensemble.dim != model.dim:
        raise ValueError(f"initial dimension {ensemble.dim} does not match model dimension {model.dim}")
    streams = [np.random.default_rng(child) for child in noise_seed.spawn(ensemble.size)]
    scale = np.sqrt(model.noise_rates)

    x = np.array(ensemble.points)
    now = 0.0
    snapshots = []
    for t in times:
        steps, h = aligned_steps(now, float(t), dt)
        done = 0
        while done < steps:
            block = min(NOISE_BLOCK, steps - done)
            increments = np.stack([rng.standard_normal((block, model.noise_dim)) for rng in streams], axis=1)
            increments *= scale * np.sqrt(h)
            for step in range(block):
                x = x + h * model.f(x) + np.einsum("ndw,nw->nd", model.coupling(x), increments[step])
                bad = ~np.isfinite(x).all(axis=1)
                if bad.any():
                    raise PropagationError(
                        "non-finite state during Euler-Maruyama integration",
                        location=f"t={now + (done + step + 1) * h:.6g}, particle={int(np.argmax(bad))}",
                    )
            done += block
        now = float(t)
        snapshots.append(ParticleEnsemble(x.copy(), ensemble.weights))
    logger.debug(f"Euler-Maruyama propagation of {x.shape[0]} particles through {model.name} to t={now:g}")
    return snapshots
