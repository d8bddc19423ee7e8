"""
WassVal - Transport
Order-2 Wasserstein distances: transportation LP, 1-D quantile formula, Gaussian
closed form, asymptotic gaps and sample complexity
"""

from .plan import TransportPlan
from .simplex import SimplexResult, northwest_corner, solve_transportation
from .wasserstein import (
    coupling_cdf,
    gaussian_trace_term,
    sqrtm_psd,
    w2_1d,
    w2_gaussian,
    w2_lp,
    wasserstein_1d,
)
from .complexity import SampleComplexityParams, build_constraint_matrix, ceil_count, n_wass, n_wass_bound
from .asymptotic import (
    AffinePairCase,
    LinearPairCase,
    NonlinearPairCase,
    NonlinearVsLinearCase,
    StochasticLinearPairCase,
    asymptotic_gap,
)
from .export import plan_frame, write_plan_csv, write_series_csv

__all__ = [
    "TransportPlan",
    "SimplexResult",
    "northwest_corner",
    "solve_transportation",
    "w2_lp",
    "w2_1d",
    "wasserstein_1d",
    "coupling_cdf",
    "w2_gaussian",
    "gaussian_trace_term",
    "sqrtm_psd",
    "SampleComplexityParams",
    "n_wass",
    "n_wass_bound",
    "ceil_count",
    "build_constraint_matrix",
    "LinearPairCase",
    "AffinePairCase",
    "StochasticLinearPairCase",
    "NonlinearVsLinearCase",
    "NonlinearPairCase",
    "asymptotic_gap",
    "plan_frame",
    "write_plan_csv",
    "write_series_csv",
]
