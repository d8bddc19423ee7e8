"""
WassVal - Certificates
Randomized PRVC/PWVC construction over admissible initial densities
"""

from .construct import (
    GapTrajectories,
    certificate_from_gaps,
    construct_certificates,
    construct_prvc,
    construct_pwvc,
    density_seeds,
    draw_densities,
    required_draws,
    sample_gap_trajectories,
    snapshot_gap,
)
from .io import read_certificate, read_tolerance, write_certificate, write_tolerance
from .laws import FiniteLaw, InitialDensityLaw, ParametricLaw, law_from_config
from .sample_size import n_chernoff, n_worstcase

__all__ = [
    "GapTrajectories",
    "certificate_from_gaps",
    "construct_certificates",
    "construct_prvc",
    "construct_pwvc",
    "density_seeds",
    "draw_densities",
    "required_draws",
    "sample_gap_trajectories",
    "snapshot_gap",
    "read_certificate",
    "read_tolerance",
    "write_certificate",
    "write_tolerance",
    "FiniteLaw",
    "InitialDensityLaw",
    "ParametricLaw",
    "law_from_config",
    "n_chernoff",
    "n_worstcase",
]
