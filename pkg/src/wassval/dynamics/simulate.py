"""
WassVal - Simulators
One interface over the three propagators: initial law in, output-space ensembles at the
snapshot times out
"""

import logging
from abc import ABC, abstractmethod
from typing import Optional, Sequence

import numpy as np

from ..densities.ensemble import ParticleEnsemble
from ..densities.families import DensityFamily
from ..densities.sampling import sample
from .liouville import PmfMode, propagate_liouville
from .models import (
    AdditiveNoiseMap,
    DeterministicMap,
    DynamicsModel,
    MultiplicativeNoiseMap,
    OdeModel,
    SdeModel,
)
from .output import push_output
from .stochastic import propagate_em

logger = logging.getLogger(__name__)


class Simulator(ABC):
    """Predicts output ensembles of a model from an initial density"""

    stochastic: bool = False

    def __init__(self, model: DynamicsModel, scheme: str = "halton"):
        self.model = model
        self.scheme = scheme

    @property
    def name(self) -> str:
        return self.model.name

    @abstractmethod
    def predict(
        self,
        initial: DensityFamily,
        times: Sequence[float],
        nu: int,
        seed: int = 0,
        ensemble: Optional[ParticleEnsemble] = None,
    ) -> list[ParticleEnsemble]:
        """Output ensembles at each snapshot time."""


class LiouvilleSimulator(Simulator):
    def __init__(self, model: OdeModel, scheme: str = "halton", pmf: PmfMode = "carried", dt: Optional[float] = None):
        super().__init__(model, scheme)
        self.pmf = pmf
        self.dt = dt

    def predict(self, initial, times, nu, seed=0, ensemble=None):
        snapshots = propagate_liouville(
            self.model, initial, nu, times, dt=self.dt, seed=seed,
            scheme=self.scheme, pmf=self.pmf, ensemble=ensemble,
        )
        return [push_output(snapshot, self.model.observe).ensemble for snapshot in snapshots]


class EulerMaruyamaSimulator(Simulator):
    stochastic = True

    def __init__(self, model: SdeModel, scheme: str = "pseudo", dt: Optional[float] = None):
        super().__init__(model, scheme)
        self.dt = dt

    def predict(self, initial, times, nu, seed=0, ensemble=None):
        snapshots = propagate_em(
            self.model, initial, nu, times, dt=self.dt, seed=seed,
            scheme=self.scheme, ensemble=ensemble,
        )
        return [push_output(snapshot, self.model.observe).ensemble for snapshot in snapshots]


class MapSimulator(Simulator):
    """Iterates a map; snapshot times are step counts"""

    def __init__(self, model, scheme: str = "halton"):
        super().__init__(model, scheme)
        self.stochastic = not isinstance(model, DeterministicMap)

    def predict(self, initial, times, nu, seed=0, ensemble=None):
        steps = np.asarray(times, dtype=float)
        if np.any(steps != np.round(steps)) or np.any(steps < 0) or np.any(np.diff(steps) < 0):
            raise ValueError("map snapshot times must be nondecreasing nonnegative integers")
        sample_seed, noise_seed = np.random.SeedSequence(seed).spawn(2)
        if ensemble is None:
            ensemble = sample(initial, nu, seed=int(sample_seed.generate_state(1)[0]), scheme=self.scheme)
        if ensemble.dim != 1:
            raise ValueError("map models act on scalar states")
        rng = np.random.default_rng(noise_seed)

        x = np.array(ensemble.points[:, 0])
        k = 0
        snapshots = []
        for target in steps.astype(int):
            while k < target:
                x = self.model.step(x, rng)
                k += 1
            snapshots.append(ParticleEnsemble(self.model.observe(x), ensemble.weights))
        return snapshots


def simulator_for(model: DynamicsModel, **options) -> Simulator:
    """Propagator matching the model type."""
    if isinstance(model, OdeModel):
        return LiouvilleSimulator(model, **options)
    if isinstance(model, SdeModel):
        return EulerMaruyamaSimulator(model, **options)
    if isinstance(model, (DeterministicMap, MultiplicativeNoiseMap, AdditiveNoiseMap)):
        return MapSimulator(model, **options)
    raise TypeError(f"no simulator for {type(model).__name__}")
