"""
WassVal - Plot Data
CSV series behind the usual validation figures; rendering is left to external tools
"""

import logging
import re
from pathlib import Path
from typing import Union

import pandas as pd

from ..models.report import Report
from ..transport.export import write_series_csv

logger = logging.getLogger(__name__)


def _safe(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", label)


def _write_frame(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    return path


def emit_plot_data(report: Report, out_dir: Union[str, Path]) -> list[Path]:
    """
    Write one CSV per figure-style series.

    Files:
        w2_vs_t_<label>.csv       t,w2 for every sampled density
        prvc_vs_k.csv             k,t,prvc
        pwvc_vs_k.csv             k,t,pwvc
        w2_and_bound_vs_k.csv     k,w2,sharper,omega

    A report without series or bounds writes nothing and gets a NOSERIES warning.
    """
    out_dir = Path(out_dir)
    if not report.series and not report.bounds:
        report.warn("NOSERIES", "report has no W2 series or bounds; no plot data written")
        logger.warning("No series in report; skipping plot data")
        return []

    written = []
    for series in report.series:
        path = out_dir / f"w2_vs_t_{_safe(series.label)}.csv"
        written.append(write_series_csv(series.t, series.w2, path))

    for certificate in report.certificates:
        column = certificate.kind.lower()
        frame = pd.DataFrame({
            "k": range(1, len(certificate.snapshots) + 1),
            "t": certificate.times,
            column: certificate.values,
        })
        written.append(_write_frame(frame, out_dir / f"{column}_vs_k.csv"))

    if report.bounds:
        frame = pd.DataFrame([bound.model_dump() for bound in report.bounds], columns=["k", "w2", "sharper", "omega"])
        written.append(_write_frame(frame, out_dir / "w2_and_bound_vs_k.csv"))

    logger.info(f"Wrote {len(written)} plot-data files to {out_dir}")
    return written
