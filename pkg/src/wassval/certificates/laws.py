"""
WassVal - Initial Density Laws
The random initial density: a finite collection with probabilities, or a family whose
parameter is drawn uniformly from a range
"""

import logging
from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence

import numpy as np

from ..densities.families import DensityFamily
from ..errors import ConfigError
from ..models.config import FamilySpec, LawConfig

logger = logging.getLogger(__name__)

LabeledDensity = tuple[str, DensityFamily]


class InitialDensityLaw(ABC):
    """Seedable sampler over admissible initial densities"""

    @abstractmethod
    def draw(self, count: int, rng: np.random.Generator) -> list[LabeledDensity]:
        """`count` independent densities."""

    def enumerate(self) -> list[LabeledDensity]:
        raise ConfigError(f"{type(self).__name__} has no finite member list", code="LAW")


class FiniteLaw(InitialDensityLaw):
    """Finite collection drawn with the given probabilities (uniform by default)"""

    def __init__(
        self,
        members: Sequence[DensityFamily],
        probabilities: Optional[Sequence[float]] = None,
        labels: Optional[Sequence[str]] = None,
    ):
        if not members:
            raise ValueError("a finite law needs at least one member")
        self.members = list(members)
        self.labels = list(labels) if labels is not None else [f"member{i}" for i in range(len(members))]
        if len(self.labels) != len(self.members):
            raise ValueError("one label per member is required")
        if probabilities is None:
            probabilities = np.full(len(members), 1.0 / len(members))
        p = np.asarray(probabilities, dtype=float)
        if p.shape != (len(members),) or np.any(p < 0) or not np.isclose(p.sum(), 1.0, atol=1e-12):
            raise ValueError("probabilities must be nonnegative, one per member, and sum to 1")
        self.probabilities = p / p.sum()

    @classmethod
    def point_mass(cls, family: DensityFamily, label: str = "point") -> "FiniteLaw":
        return cls([family], labels=[label])

    def draw(self, count, rng):
        picks = rng.choice(len(self.members), size=count, p=self.probabilities)
        return [(self.labels[i], self.members[i]) for i in picks]

    def enumerate(self):
        return list(zip(self.labels, self.members))


class ParametricLaw(InitialDensityLaw):
    """Family builder fed a parameter drawn uniformly from [low, high]"""

    def __init__(self, builder: Callable[[float], DensityFamily], low: float, high: float, name: str = "theta"):
        if not high >= low:
            raise ValueError("parameter range must satisfy low <= high")
        self.builder = builder
        self.low = float(low)
        self.high = float(high)
        self.name = name

    def draw(self, count, rng):
        values = rng.uniform(self.low, self.high, size=count)
        return [(f"{self.name}{v:.6g}", self.builder(float(v))) for v in values]


def law_from_config(config: LawConfig) -> InitialDensityLaw:
    """
    Build the law described by a config block.

    Raises:
        ConfigError: a member or the parametric template does not build (code LAW)
    """
    if config.parametric is not None:
        spec = config.parametric

        def builder(value: float) -> DensityFamily:
            return FamilySpec.model_validate({**spec.template.model_dump(), spec.parameter: value}).to_family()

        builder(spec.low)
        return ParametricLaw(builder, spec.low, spec.high, name=spec.parameter)

    members = [member.to_family() for member in config.members]
    labels = [member.display_label() for member in config.members]
    if len(set(labels)) != len(labels):
        labels = [f"{label}_{i}" for i, label in enumerate(labels)]
        logger.debug("Duplicate member labels; suffixed with member index")
    try:
        return FiniteLaw(members, config.probabilities, labels)
    except ValueError as e:
        raise ConfigError(str(e), code="LAW") from e
