"""
WassVal - Validation Config Models
Pydantic schema for the JSON configs consumed by valctl
"""

import json
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from ..densities.families import (
    Arcsine,
    DensityFamily,
    DiracMixture,
    Gaussian,
    ScaledBeta,
    UniformBox,
)
from ..errors import ConfigError
from .certificate import ToleranceSchedule


# === Models ===

class ModelSpec(BaseModel):
    """Registry model id with its parameters"""
    id: str = Field(description="Registry id (e.g., example1_truth)")
    params: dict[str, Any] = Field(default_factory=dict, description="Model parameters")


# === Densities ===

class FamilySpec(BaseModel):
    """One admissible initial density"""
    kind: Literal["gaussian", "uniform", "beta", "arcsine", "dirac"] = Field(description="Density family")
    label: Optional[str] = Field(default=None, description="Name used for series files")
    mean: Optional[list[float]] = Field(default=None, description="Gaussian mean")
    cov: Optional[list[list[float]]] = Field(default=None, description="Gaussian covariance")
    sigma: Optional[float] = Field(default=None, description="Isotropic Gaussian standard deviation")
    dim: Optional[int] = Field(default=None, description="Dimension of an isotropic Gaussian")
    lower: Optional[Union[float, list[float]]] = Field(default=None, description="Lower support bound")
    upper: Optional[Union[float, list[float]]] = Field(default=None, description="Upper support bound")
    alpha: Optional[float] = Field(default=None, description="Beta shape alpha")
    beta: Optional[float] = Field(default=None, description="Beta shape beta")
    locations: Optional[list[list[float]]] = Field(default=None, description="Dirac locations")
    masses: Optional[list[float]] = Field(default=None, description="Dirac masses")

    def to_family(self) -> DensityFamily:
        """
        Build the density family.

        Raises:
            ConfigError: missing or invalid fields (code LAW)
        """
        try:
            if self.kind == "gaussian":
                if self.sigma is not None:
                    dim = self.dim or (len(self.mean) if self.mean else 1)
                    return Gaussian.isotropic(self.sigma, dim, center=self.mean)
                return Gaussian(self.mean, self.cov)
            if self.kind == "uniform":
                return UniformBox(self.lower, self.upper)
            if self.kind == "beta":
                return ScaledBeta(self.alpha, self.beta, _scalar(self.lower, 0.0), _scalar(self.upper, 1.0))
            if self.kind == "arcsine":
                return Arcsine(_scalar(self.lower, -1.0), _scalar(self.upper, 1.0))
            return DiracMixture(self.locations, self.masses)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid {self.kind} density: {e}", code="LAW") from e

    def display_label(self) -> str:
        if self.label:
            return self.label
        if self.kind == "gaussian" and self.sigma is not None:
            return f"sigma{self.sigma:g}"
        return self.kind


def _scalar(value, default: float) -> float:
    if value is None:
        return default
    return float(value[0]) if isinstance(value, list) else float(value)


class ParametricSpec(BaseModel):
    """Family whose parameter is drawn uniformly from [low, high]"""
    template: FamilySpec = Field(description="Family with the remaining fields fixed")
    parameter: Literal["sigma", "alpha", "beta"] = Field(default="sigma", description="Drawn field")
    low: float = Field(description="Lower end of the parameter range")
    high: float = Field(description="Upper end of the parameter range")


class LawConfig(BaseModel):
    """Law of the random initial density"""
    mode: Literal["random", "enumerate"] = Field(default="random", description="Draw N densities or enumerate all")
    members: list[FamilySpec] = Field(default_factory=list, description="Finite collection of densities")
    probabilities: Optional[list[float]] = Field(default=None, description="Member probabilities (uniform if omitted)")
    parametric: Optional[ParametricSpec] = Field(default=None, description="Parametric collection")


# === Optional checks ===

class PrajnaSpec(BaseModel):
    """Interval measurements for the cubic-model reachability check"""
    x0: list[float] = Field(description="Initial interval")
    x_t: list[float] = Field(description="Final interval")
    p: list[float] = Field(description="Parameter interval")
    t: float = Field(description="Final time")


class StationarySpec(BaseModel):
    """Long-time gap between the truth and model output laws"""
    attractors: Optional[list[list[float]]] = Field(default=None, description="Stable equilibria of the truth model")
    model_attractors: Optional[list[list[float]]] = Field(
        default=None, description="Stable equilibria of the model (the origin if omitted)"
    )
    initial: Optional[FamilySpec] = Field(
        default=None, description="Density classified by region of attraction (first law member if omitted)"
    )
    laws: Optional[list[FamilySpec]] = Field(default=None, description="Closed-form 1-D stationary output laws: truth, model")
    n: Optional[int] = Field(default=None, description="Trajectories classified (nu if omitted)")
    horizon: Optional[float] = Field(default=None, description="Integration horizon (Settings.roa_horizon if omitted)")
    radius: Optional[float] = Field(default=None, description="Capture radius (Settings.roa_radius if omitted)")


class LtiSpec(BaseModel):
    """Discrete-time LTI pair whose bound series is reported"""
    a: list[list[float]]
    a_hat: list[list[float]]
    p0: list[list[float]]
    k_max: int = Field(default=20, description="Last step of the bound series")


class PropagationSpec(BaseModel):
    """Propagator options"""
    scheme: Optional[Literal["pseudo", "halton", "quantile"]] = Field(default=None, description="Initial sampling scheme")
    pmf: Literal["carried", "density"] = Field(default="carried", description="Liouville snapshot weights")
    dt: Optional[float] = Field(default=None, description="Integrator step")


class OutputSpec(BaseModel):
    """Where results go"""
    dir: Optional[str] = Field(default=None, description="Output directory (Settings.output_dir if omitted)")
    report: str = Field(default="report.json", description="Report file name")
    plot_data: bool = Field(default=True, description="Emit plot-data CSVs")


# === Main config ===

class ValidationConfig(BaseModel):
    """A complete validation run"""
    version: str = Field(default="1")
    model: ModelSpec = Field(description="Model under validation")
    truth: Optional[ModelSpec] = Field(default=None, description="Data generator (data_source=model, simulate)")
    data_source: Literal["file", "model"] = Field(default="file", description="Measured data from a CSV or the truth model")
    data: Optional[str] = Field(default=None, description="Measured data CSV path")
    initial_law: LawConfig = Field(default_factory=LawConfig, description="Admissible initial densities")
    times: list[float] = Field(description="Snapshot times (step counts for maps)")
    tolerance: Optional[ToleranceSchedule] = Field(default=None, description="Per-snapshot tolerances")
    epsilon: float = Field(default=0.1, description="Accuracy")
    delta: float = Field(default=0.05, description="Confidence parameter")
    nu: Optional[int] = Field(default=None, description="Particles per density (Settings.default_nu if omitted)")
    seed: int = Field(default=0, description="Master seed")
    certificates: list[Literal["PRVC", "PWVC"]] = Field(default_factory=lambda: ["PRVC", "PWVC"])
    propagation: PropagationSpec = Field(default_factory=PropagationSpec)
    output: OutputSpec = Field(default_factory=OutputSpec)
    prajna: Optional[PrajnaSpec] = Field(default=None, description="Hard invalidation check")
    lti: Optional[LtiSpec] = Field(default=None, description="LTI bound series")
    stationary: Optional[StationarySpec] = Field(default=None, description="Asymptotic gap check")

    def check(self) -> "ValidationConfig":
        """
        Cross-field invariants.

        Raises:
            ConfigError: TIMES, TOL_LEN, LAW or SCHEMA violations
        """
        if not self.times:
            raise ConfigError("at least one snapshot time is required", code="TIMES")
        if any(t < 0 for t in self.times) or any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ConfigError("snapshot times must be nonnegative and strictly increasing", code="TIMES")
        if "PRVC" in self.certificates and self.tolerance is None:
            raise ConfigError("PRVC needs a tolerance schedule", code="TOL_LEN")
        if self.tolerance is not None and len(self.tolerance) != len(self.times):
            raise ConfigError(
                f"tolerance schedule has {len(self.tolerance)} entries for {len(self.times)} snapshot times",
                code="TOL_LEN",
            )
        if self.stationary is not None:
            self._check_stationary(self.stationary)
        if not self.certificates:
            return self
        law = self.initial_law
        if bool(law.members) == (law.parametric is not None):
            raise ConfigError("initial_law needs exactly one of members or parametric", code="LAW")
        if law.mode == "enumerate" and not law.members:
            raise ConfigError("enumerate mode needs a finite member list", code="LAW")
        if law.probabilities is not None and len(law.probabilities) != len(law.members):
            raise ConfigError("one probability per member is required", code="LAW")
        if not 0 < self.epsilon < 1 or not 0 < self.delta < 1:
            raise ConfigError("epsilon and delta must lie in (0, 1)", code="SCHEMA")
        if self.data_source == "model" and self.truth is None:
            raise ConfigError("data_source=model needs a truth model", code="SCHEMA")
        if self.data_source == "file" and self.data is None:
            raise ConfigError("data_source=file needs a data path", code="SCHEMA")
        return self

    def _check_stationary(self, spec: StationarySpec) -> None:
        if (spec.attractors is None) == (spec.laws is None):
            raise ConfigError("stationary needs exactly one of attractors or laws", code="SCHEMA")
        if spec.laws is not None and len(spec.laws) != 2:
            raise ConfigError("stationary.laws lists the truth law then the model law", code="SCHEMA")
        if spec.attractors is not None:
            if self.truth is None:
                raise ConfigError("stationary.attractors needs a truth model", code="SCHEMA")
            if spec.initial is None and not self.initial_law.members:
                raise ConfigError("stationary.attractors needs an initial density", code="LAW")


def parse_config(path: Union[str, Path], data: Optional[str] = None) -> ValidationConfig:
    """
    Read a config file and validate its schema, without the cross-field checks.

    Raises:
        ConfigError: unreadable JSON or schema violation
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config: {e}", location=str(path)) from e
    if data is not None:
        raw["data"] = data
        raw["data_source"] = "file"
    try:
        return ValidationConfig.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"{where}: {first['msg']}", code="SCHEMA", location=str(path)) from e


def load_config(path: Union[str, Path], data: Optional[str] = None) -> ValidationConfig:
    """
    Read and validate a config file; `data` overrides the data path.

    Raises:
        ConfigError: unreadable JSON, schema violation or broken invariant
    """
    return parse_config(path, data).check()
