"""
WassVal - Densities
Density representations, sampling, CDF/quantile machinery and moments
"""

from .ensemble import ParticleEnsemble
from .families import Arcsine, DensityFamily, DiracMixture, Empirical, Gaussian, ScaledBeta, UniformBox
from .cdf import AnalyticCdf, Cdf1D, GridCdf, StepCdf, cdf, quantile, raw_moment
from .sampling import sample, unit_points
from .entropy import beta_entropy
from .io import read_ensemble_csv, read_snapshots_csv, write_ensemble_csv, write_snapshots_csv

__all__ = [
    "ParticleEnsemble",
    "DensityFamily",
    "Gaussian",
    "UniformBox",
    "ScaledBeta",
    "Arcsine",
    "DiracMixture",
    "Empirical",
    "Cdf1D",
    "AnalyticCdf",
    "StepCdf",
    "GridCdf",
    "cdf",
    "quantile",
    "raw_moment",
    "sample",
    "unit_points",
    "beta_entropy",
    "read_ensemble_csv",
    "write_ensemble_csv",
    "read_snapshots_csv",
    "write_snapshots_csv",
]
