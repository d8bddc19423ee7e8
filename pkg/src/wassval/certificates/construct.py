"""
WassVal - Certificate Construction
Sample initial densities, propagate each through the model, measure the per-snapshot
W2 gap to the data and reduce the gaps to PRVC or PWVC values
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence, Union

import numpy as np

from ..config import get_settings
from ..densities.cdf import cdf
from ..densities.ensemble import ParticleEnsemble
from ..densities.families import DensityFamily
from ..dynamics.simulate import Simulator
from ..errors import DataError, PropagationError
from ..models.certificate import SnapshotValue, ToleranceSchedule, ValidationCertificate
from ..transport.wasserstein import w2_1d, w2_lp
from .laws import InitialDensityLaw
from .sample_size import n_chernoff, n_worstcase

logger = logging.getLogger(__name__)

CertificateKind = Literal["PRVC", "PWVC"]
DrawMode = Literal["random", "enumerate"]
MeasuredData = Union[Sequence[ParticleEnsemble], Simulator]


@dataclass
class GapTrajectories:
    """W2 gap of every sampled density (rows) at every snapshot (columns)"""

    labels: list[str]
    gaps: np.ndarray
    times: np.ndarray
    warnings: list[tuple[str, str]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.labels)

    def head(self, count: int) -> "GapTrajectories":
        """First `count` draws."""
        return GapTrajectories(self.labels[:count], self.gaps[:count], self.times, list(self.warnings))


def density_seeds(seed: int, count: int) -> list[int]:
    """Per-density propagation seeds; the first k seeds do not depend on `count`."""
    _, density_root = np.random.SeedSequence(seed).spawn(2)
    return [int(child.generate_state(1)[0]) for child in density_root.spawn(count)]


def law_rng(seed: int) -> np.random.Generator:
    law_root, _ = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(law_root)


def snapshot_gap(measured: ParticleEnsemble, predicted: ParticleEnsemble) -> float:
    """
    W2 between a measured and a predicted output ensemble.

    Scalar outputs go through the quantile formula, everything else through the
    transportation LP.
    """
    if measured.dim != predicted.dim:
        raise DataError(
            f"data has dimension {measured.dim}, model output has {predicted.dim}",
            code="DIM_MISMATCH",
        )
    if measured.dim == 1:
        return w2_1d(cdf(measured), cdf(predicted))
    return w2_lp(measured, predicted)[0]


def draw_densities(
    law: InitialDensityLaw,
    count: int,
    seed: int,
    mode: DrawMode = "random",
) -> list[tuple[str, DensityFamily]]:
    if mode == "enumerate":
        return law.enumerate()
    if count < 1:
        raise ValueError("at least one density must be drawn")
    return law.draw(count, law_rng(seed))


def sample_gap_trajectories(
    measured: MeasuredData,
    simulator: Simulator,
    law: InitialDensityLaw,
    times: Sequence[float],
    count: int,
    nu: Optional[int] = None,
    seed: int = 0,
    mode: DrawMode = "random",
    threads: Optional[int] = None,
) -> GapTrajectories:
    """
    Draw initial densities and compute each one's W2 gap at every snapshot.

    Args:
        measured: Fixed per-snapshot data ensembles, or a simulator of the true
            system that is fed the same density and seed as the model
        simulator: Model simulator producing output ensembles
        law: Law of the initial density
        times: Snapshot times
        count: Number of draws (ignored in enumerate mode)
        nu: Particles per density (Settings.default_nu if None)
        seed: Master seed
        mode: "random" draws from the law, "enumerate" lists each member once
        threads: Worker threads over draws (Settings.threads if None)

    Returns:
        GapTrajectories with one row per draw

    Raises:
        PropagationError: a draw failed to propagate; location names the draw
        DataError: data snapshots do not match the times or the output dimension
    """
    settings = get_settings()
    nu = nu or settings.default_nu
    threads = threads or settings.threads
    times = np.asarray(times, dtype=float)

    warnings: list[tuple[str, str]] = []
    if not isinstance(measured, Simulator):
        if len(measured) != times.size:
            raise DataError(
                f"{len(measured)} data snapshots for {times.size} snapshot times",
                code="SNAPSHOT",
            )
        warnings.append((
            "LAW_INTERPRETATION",
            "the same measured ensembles are compared against every sampled initial density",
        ))

    draws = draw_densities(law, count, seed, mode)
    seeds = density_seeds(seed, len(draws))
    logger.info(f"Propagating {len(draws)} initial densities ({nu} particles each) through {simulator.name}")

    def gap_row(i: int) -> np.ndarray:
        label, family = draws[i]
        try:
            predicted = simulator.predict(family, times, nu, seed=seeds[i])
            data = measured.predict(family, times, nu, seed=seeds[i]) if isinstance(measured, Simulator) else measured
        except PropagationError as e:
            where = f"density {i} ({label})" + (f", {e.location}" if e.location else "")
            raise PropagationError(e.message, location=where) from e
        row = np.empty(times.size)
        for k in range(times.size):
            try:
                row[k] = snapshot_gap(data[k], predicted[k])
            except DataError as e:
                raise DataError(e.message, code=e.code, location=f"snapshot t={times[k]:g}") from e
        logger.debug(f"Density {i} ({label}): max gap {row.max():.6g}")
        return row

    if threads > 1 and len(draws) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(gap_row, range(len(draws))))
    else:
        rows = [gap_row(i) for i in range(len(draws))]

    return GapTrajectories(
        labels=[label for label, _ in draws],
        gaps=np.vstack(rows),
        times=times,
        warnings=warnings,
    )


def certificate_from_gaps(
    kind: CertificateKind,
    gaps: GapTrajectories,
    epsilon: float,
    delta: float,
    nu: int,
    seed: int,
    model_id: str,
    tolerance: Optional[ToleranceSchedule] = None,
) -> ValidationCertificate:
    """
    Reduce gap trajectories to a certificate.

    PRVC reports, per snapshot, the fraction of draws whose gap is at most gamma_k;
    PWVC reports the largest gap.
    """
    if kind == "PRVC":
        if tolerance is None:
            raise ValueError("PRVC needs a tolerance schedule")
        gammas = np.asarray(tolerance.gammas, dtype=float)
        if gammas.size != gaps.times.size:
            raise ValueError(f"{gammas.size} tolerances for {gaps.times.size} snapshots")
        counts = np.sum(gaps.gaps <= gammas[None, :], axis=0)
        snapshots = [
            SnapshotValue(t=float(t), value=int(c) / gaps.count, count=int(c))
            for t, c in zip(gaps.times, counts)
        ]
    elif kind == "PWVC":
        worst = gaps.gaps.max(axis=0)
        snapshots = [SnapshotValue(t=float(t), value=float(v)) for t, v in zip(gaps.times, worst)]
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")

    return ValidationCertificate(
        kind=kind,
        epsilon=epsilon,
        delta=delta,
        N=gaps.count,
        nu=nu,
        seed=seed,
        model_id=model_id,
        snapshots=snapshots,
    )


def required_draws(kind: CertificateKind, epsilon: float, delta: float) -> int:
    return n_chernoff(epsilon, delta) if kind == "PRVC" else n_worstcase(epsilon, delta)


def construct_certificates(
    kinds: Sequence[CertificateKind],
    measured: MeasuredData,
    simulator: Simulator,
    law: InitialDensityLaw,
    times: Sequence[float],
    epsilon: float,
    delta: float,
    tolerance: Optional[ToleranceSchedule] = None,
    nu: Optional[int] = None,
    seed: int = 0,
    mode: DrawMode = "random",
    threads: Optional[int] = None,
    model_id: Optional[str] = None,
) -> tuple[list[ValidationCertificate], GapTrajectories]:
    """
    Build several certificates from one sampled prefix.

    The draws are made once for the largest required N; each certificate uses the
    first N of them. In enumerate mode every certificate uses the full member list.
    """
    nu = nu or get_settings().default_nu
    sizes = {kind: required_draws(kind, epsilon, delta) for kind in kinds}
    gaps = sample_gap_trajectories(
        measured, simulator, law, times,
        count=max(sizes.values()), nu=nu, seed=seed, mode=mode, threads=threads,
    )
    model_id = model_id or simulator.name
    certificates = []
    for kind in kinds:
        subset = gaps if mode == "enumerate" else gaps.head(sizes[kind])
        certificates.append(certificate_from_gaps(kind, subset, epsilon, delta, nu, seed, model_id, tolerance))
        logger.info(f"{kind} built from N={subset.count} draws")
    return certificates, gaps


def construct_prvc(
    measured: MeasuredData,
    simulator: Simulator,
    law: InitialDensityLaw,
    times: Sequence[float],
    tolerance: ToleranceSchedule,
    epsilon: float,
    delta: float,
    nu: Optional[int] = None,
    seed: int = 0,
    mode: DrawMode = "random",
    threads: Optional[int] = None,
) -> ValidationCertificate:
    """Probabilistically robust validation certificate from n_chernoff(epsilon, delta) draws."""
    certificates, _ = construct_certificates(
        ["PRVC"], measured, simulator, law, times, epsilon, delta,
        tolerance=tolerance, nu=nu, seed=seed, mode=mode, threads=threads,
    )
    return certificates[0]


def construct_pwvc(
    measured: MeasuredData,
    simulator: Simulator,
    law: InitialDensityLaw,
    times: Sequence[float],
    epsilon: float,
    delta: float,
    nu: Optional[int] = None,
    seed: int = 0,
    mode: DrawMode = "random",
    threads: Optional[int] = None,
) -> ValidationCertificate:
    """Probabilistically worst-case validation certificate from n_worstcase(epsilon, delta) draws."""
    certificates, _ = construct_certificates(
        ["PWVC"], measured, simulator, law, times, epsilon, delta,
        nu=nu, seed=seed, mode=mode, threads=threads,
    )
    return certificates[0]
