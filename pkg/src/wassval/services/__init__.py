"""
WassVal - Services
Validation pipeline and plot-data emission behind valctl
"""

from .plotdata import emit_plot_data
from .validation import (
    ValidationRun,
    build_simulator,
    config_digest,
    load_measured,
    read_report,
    run_validate,
    simulate,
    stationary_check,
    write_report,
)

__all__ = [
    "emit_plot_data",
    "ValidationRun",
    "build_simulator",
    "config_digest",
    "load_measured",
    "read_report",
    "run_validate",
    "simulate",
    "stationary_check",
    "write_report",
]
