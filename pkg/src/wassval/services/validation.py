"""
WassVal - Validation Service
Pipeline behind `valctl validate` and `valctl simulate`: config and data in,
propagation, distances and certificates through, report out
"""

import hashlib
import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..analytic.lti import LtiPair, lti_bound_series
from ..analytic.prajna import prajna_check
from ..certificates.construct import (
    GapTrajectories,
    construct_certificates,
    density_seeds,
    draw_densities,
)
from ..certificates.laws import law_from_config
from ..config import get_settings
from ..densities.cdf import cdf
from ..densities.families import DiracMixture
from ..densities.io import read_snapshots_csv, write_snapshots_csv
from ..dynamics.models import OdeModel, SdeModel
from ..dynamics.registry import build_model
from ..dynamics.simulate import Simulator, simulator_for
from ..dynamics.stationary import dirac_stationary
from ..errors import ConfigError, DataError, QuadratureError
from ..models.config import ModelSpec, PropagationSpec, ValidationConfig, load_config, parse_config
from ..models.report import BoundRecord, PrajnaRecord, Report, SeriesRecord, StationaryRecord, report_digest
from ..transport.asymptotic import NonlinearPairCase, asymptotic_gap
from ..transport.wasserstein import w2_1d
from .plotdata import emit_plot_data

logger = logging.getLogger(__name__)

TIME_MATCH_TOL = 1e-9


@dataclass
class ValidationRun:
    """Report of a finished run with the files it wrote"""

    report: Report
    report_path: Optional[Path]
    digest: str

    @property
    def invalidated(self) -> bool:
        return self.report.prajna is not None and self.report.prajna.verdict == "invalidated"


def build_simulator(spec: ModelSpec, propagation: PropagationSpec) -> Simulator:
    """Registry model wrapped in the propagator that matches its type."""
    model = build_model(spec.id, spec.params)
    options = {}
    if propagation.scheme is not None:
        options["scheme"] = propagation.scheme
    if isinstance(model, (OdeModel, SdeModel)):
        options["dt"] = propagation.dt
    if isinstance(model, OdeModel):
        options["pmf"] = propagation.pmf
    return simulator_for(model, **options)


def config_digest(config: ValidationConfig) -> str:
    return hashlib.sha256(config.model_dump_json().encode("utf-8")).hexdigest()


def load_measured(config: ValidationConfig, base_dir: Optional[Path] = None):
    """
    Measured side of the comparison: CSV snapshots or a truth simulator.

    Raises:
        DataError: unreadable CSV, or snapshot times that differ from the config
    """
    if config.data_source == "model":
        return build_simulator(config.truth, config.propagation)

    path = Path(config.data)
    if not path.is_absolute() and base_dir is not None and not path.exists():
        path = base_dir / path
    times, ensembles = read_snapshots_csv(path)
    expected = np.asarray(config.times, dtype=float)
    if times.size != expected.size or np.any(np.abs(times - expected) > TIME_MATCH_TOL):
        raise DataError(
            f"data snapshot times {times.tolist()} do not match config times {expected.tolist()}",
            code="SNAPSHOT",
            location=str(path),
        )
    logger.info(f"Loaded {len(ensembles)} data snapshots from {path}")
    return ensembles


def _rounded(value: Optional[float], digits: int) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return round(float(value), digits)


def _series(gaps: GapTrajectories, digits: int) -> list[SeriesRecord]:
    seen: dict[str, int] = {}
    records = []
    for label, row in zip(gaps.labels, gaps.gaps):
        seen[label] = seen.get(label, 0) + 1
        unique = label if seen[label] == 1 else f"{label}_{seen[label] - 1}"
        records.append(SeriesRecord(
            label=unique,
            t=[float(t) for t in gaps.times],
            w2=[round(float(v), digits) for v in row],
        ))
    return records


def _attractor_law(model: OdeModel, initial, attractors, config: ValidationConfig, report: Report, side: str):
    spec = config.stationary
    result = dirac_stationary(
        model, initial, attractors,
        n=spec.n or config.nu,
        seed=config.seed,
        horizon=spec.horizon,
        radius=spec.radius,
    )
    if result.unconverged:
        report.warn(
            "UNCONVERGED",
            f"{side}: {result.unconverged} trajectories (mass {result.unconverged_mass:.3g}) "
            f"reached no attractor and were excluded",
        )
    keep = result.law.masses > 0
    return DiracMixture(model.observe(result.law.locations[keep]), result.law.masses[keep]), result


def stationary_check(config: ValidationConfig, report: Report, digits: int) -> StationaryRecord:
    """
    Asymptotic W2 between the truth and model output laws.

    Closed-form 1-D laws are compared by quadrature; a failed quadrature is reported
    as a QUADRATURE warning with no value. With attractors, the initial density is
    split over the truth model's regions of attraction and the resulting Dirac
    mixture is compared with the model's (the origin unless `model_attractors` is set).

    Raises:
        ConfigError: non-ODE models, multivariate laws, or no converged trajectory
    """
    spec = config.stationary
    if spec.laws is not None:
        try:
            truth_cdf, model_cdf = (cdf(member.to_family()) for member in spec.laws)
        except ValueError as e:
            raise ConfigError(f"stationary.laws: {e}", code="LAW") from e
        try:
            value = w2_1d(truth_cdf, model_cdf)
        except QuadratureError as e:
            report.warn("QUADRATURE", f"stationary gap: {e}")
            return StationaryRecord(w2=None)
        return StationaryRecord(w2=round(value, digits))

    truth = build_model(config.truth.id, config.truth.params)
    model = build_model(config.model.id, config.model.params)
    if not isinstance(truth, OdeModel) or not isinstance(model, OdeModel):
        raise ConfigError("stationary.attractors needs ODE truth and model", code="MODEL")
    initial = (spec.initial or config.initial_law.members[0]).to_family()
    try:
        truth_law, truth_result = _attractor_law(truth, initial, spec.attractors, config, report, "truth")
        unconverged = truth_result.unconverged
        if spec.model_attractors is None:
            model_law = DiracMixture(np.zeros((1, truth_law.locations.shape[1])), [1.0])
        else:
            model_law, model_result = _attractor_law(model, initial, spec.model_attractors, config, report, "model")
            unconverged += model_result.unconverged
    except ValueError as e:
        raise ConfigError(f"stationary: {e}", code="MODEL") from e
    value = asymptotic_gap(NonlinearPairCase(truth_law, model_law))
    logger.info(f"Stationary gap {value:.6g} over attractor masses {np.round(truth_result.law.masses, 4).tolist()}")
    return StationaryRecord(
        w2=round(value, digits),
        masses=[round(float(m), digits) for m in truth_result.law.masses],
        unconverged=unconverged,
    )


def run_validate(
    config: Union[ValidationConfig, str, Path],
    data: Optional[str] = None,
    out: Optional[Union[str, Path]] = None,
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    write: bool = True,
) -> ValidationRun:
    """
    Run one validation: certificates, per-density W2 series, optional LTI bounds,
    stationary gap and reachability check.

    Args:
        config: Config object or path to a config JSON
        data: Measured data CSV (overrides the config)
        out: Output directory (overrides config and settings)
        seed: Master seed (overrides the config)
        threads: Worker threads over density draws
        write: Write the report (and plot data if enabled)

    Returns:
        ValidationRun with the report and its digest

    Raises:
        WassvalError: schema, data, or propagation failures
    """
    settings = get_settings()
    base_dir = None
    if not isinstance(config, ValidationConfig):
        base_dir = Path(config).resolve().parent
        config = load_config(config, data=data)
    elif data is not None:
        config = config.model_copy(update={"data": data, "data_source": "file"}).check()
    if seed is not None:
        config = config.model_copy(update={"seed": seed})
    digits = settings.json_digits

    timings: dict[str, float] = {}
    report = Report(model_id=config.model.id, seed=config.seed, config_digest=config_digest(config))

    if config.certificates:
        started = time.perf_counter()
        measured = load_measured(config, base_dir)
        simulator = build_simulator(config.model, config.propagation)
        law = law_from_config(config.initial_law)
        certificates, gaps = construct_certificates(
            config.certificates, measured, simulator, law, config.times,
            config.epsilon, config.delta,
            tolerance=config.tolerance,
            nu=config.nu,
            seed=config.seed,
            mode=config.initial_law.mode,
            threads=threads,
            model_id=config.model.id,
        )
        for certificate in certificates:
            for snapshot in certificate.snapshots:
                snapshot.value = round(snapshot.value, digits)
        report.certificates = certificates
        report.series = _series(gaps, digits)
        for code, message in gaps.warnings:
            report.warn(code, message)
        timings["certificates"] = time.perf_counter() - started

    if config.lti is not None:
        started = time.perf_counter()
        try:
            pair = LtiPair(np.asarray(config.lti.a), np.asarray(config.lti.a_hat), np.asarray(config.lti.p0))
        except ValueError as e:
            raise ConfigError(f"lti: {e}") from e
        for row in lti_bound_series(pair, config.lti.k_max):
            report.bounds.append(BoundRecord(
                k=row.k,
                w2=round(row.w2, digits),
                sharper=round(row.sharper, digits),
                omega=_rounded(row.omega, digits),
            ))
            for code in row.warnings:
                report.warn(code, f"spectral bound undefined at k={row.k}")
        timings["lti"] = time.perf_counter() - started

    if config.stationary is not None:
        started = time.perf_counter()
        report.stationary = stationary_check(config, report, digits)
        timings["stationary"] = time.perf_counter() - started

    if config.prajna is not None:
        check = config.prajna
        try:
            result = prajna_check(check.x0, check.x_t, check.p, check.t)
        except ValueError as e:
            raise ConfigError(f"prajna: {e}") from e
        report.prajna = PrajnaRecord(witness=round(result.witness, digits), verdict=result.verdict)
        logger.info(f"Reachability check: {result.verdict} (witness {result.witness:.6g})")

    report.timings = timings
    report_path = None
    if write:
        out_dir = Path(out or config.output.dir or settings.output_dir)
        if config.output.plot_data:
            emit_plot_data(report, out_dir)
        report_path = write_report(report, out_dir / config.output.report)
        logger.info(f"Report written to {report_path}")
    return ValidationRun(report=report, report_path=report_path, digest=report_digest(report))


def write_report(report: Report, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_report(path: Union[str, Path]) -> Report:
    path = Path(path)
    try:
        return Report.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise DataError(f"cannot read report: {e}", location=str(path)) from e


def simulate(config: Union[ValidationConfig, str, Path], out: Union[str, Path], member: int = 0) -> Path:
    """
    Write measured-data snapshots for a config by propagating one law member
    through the truth model (or the validated model when no truth is set).

    The member is propagated with the first per-density seed, so validating the
    same model against this file reproduces it exactly for that draw.
    """
    if not isinstance(config, ValidationConfig):
        config = parse_config(config)
    spec = config.truth or config.model
    simulator = build_simulator(spec, config.propagation)
    law = law_from_config(config.initial_law)
    draws = draw_densities(law, max(member + 1, 1), config.seed, mode=config.initial_law.mode)
    if member >= len(draws):
        raise ConfigError(f"law has {len(draws)} members, member {member} requested", code="LAW")
    label, family = draws[member]
    nu = config.nu or get_settings().default_nu
    ensembles = simulator.predict(family, config.times, nu, seed=density_seeds(config.seed, member + 1)[member])
    logger.info(f"Simulated {len(ensembles)} snapshots of {spec.id} from {label}")
    return write_snapshots_csv(config.times, ensembles, out)
