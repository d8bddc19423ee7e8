"""
WassVal - Ensemble CSV I/O
Header `w,x1,...,xd`, one particle per row; the weight column is optional.
"""

from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from ..errors import DataError
from .ensemble import ParticleEnsemble


def _coordinate_columns(frame: pd.DataFrame) -> list[str]:
    columns = [c for c in frame.columns if c.startswith("x") and c[1:].isdigit()]
    return sorted(columns, key=lambda c: int(c[1:]))


def ensemble_to_frame(ensemble: ParticleEnsemble) -> pd.DataFrame:
    frame = pd.DataFrame(ensemble.points, columns=[f"x{i + 1}" for i in range(ensemble.dim)])
    frame.insert(0, "w", ensemble.weights)
    return frame


def ensemble_from_frame(frame: pd.DataFrame, source: str = "<frame>") -> ParticleEnsemble:
    columns = _coordinate_columns(frame)
    if not columns:
        raise DataError(f"no x1..xd columns in {source}", code="DATA_IO", location=source)
    expected = [f"x{i + 1}" for i in range(len(columns))]
    if columns != expected:
        raise DataError(f"coordinate columns must be {expected}, found {columns}", location=source)
    points = frame[columns].to_numpy(dtype=float)
    weights = frame["w"].to_numpy(dtype=float) if "w" in frame.columns else None
    try:
        return ParticleEnsemble(points, weights)
    except ValueError as e:
        raise DataError(str(e), location=source) from e


def write_ensemble_csv(ensemble: ParticleEnsemble, path: Union[str, Path]) -> Path:
    """Write an ensemble; floats are written in shortest round-trip form."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ensemble_to_frame(ensemble).to_csv(path, index=False, float_format=None)
    return path


def read_ensemble_csv(path: Union[str, Path]) -> ParticleEnsemble:
    path = Path(path)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f"cannot read ensemble CSV: {e}", location=str(path)) from e
    return ensemble_from_frame(frame, source=str(path))


def write_snapshots_csv(times, ensembles, path: Union[str, Path]) -> Path:
    """Write per-snapshot ensembles as one CSV with a leading `t` column."""
    frames = []
    for t, ensemble in zip(times, ensembles):
        frame = ensemble_to_frame(ensemble)
        frame.insert(0, "t", float(t))
        frames.append(frame)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.concat(frames, ignore_index=True).to_csv(path, index=False, float_format=None)
    return path


def read_snapshots_csv(path: Union[str, Path]) -> tuple[np.ndarray, list[ParticleEnsemble]]:
    """
    Read a `t,w,x1,...,xd` CSV into snapshot times and ensembles (sorted by time).

    Raises:
        DataError: unreadable file, missing `t` column, or inconsistent dimensions
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DataError(f"cannot read data CSV: {e}", location=str(path)) from e
    if "t" not in frame.columns:
        raise DataError("data CSV needs a `t` column", location=str(path))
    times, ensembles = [], []
    for t, group in frame.groupby("t", sort=True):
        ensembles.append(ensemble_from_frame(group, source=f"{path}@t={t}"))
        times.append(float(t))
    dims = {e.dim for e in ensembles}
    if len(dims) > 1:
        raise DataError(f"snapshots have inconsistent dimensions {sorted(dims)}",
                        code="DIM_MISMATCH", location=str(path))
    return np.asarray(times), ensembles
