"""
WassVal - Analytic
Closed-form gaps, bounds and diagnostics used as calculators and oracles
"""

from .beta import beta_beta_w2, beta_correlation_integral, beta_second_moment
from .diagnostics import (
    GaussianKlDiagnostic,
    LogNoiseResult,
    classify_log_noise,
    gaussian_kl_diag,
    log_noise_sign,
)
from .lti import LtiBounds, LtiPair, lti_bound_series, lti_bounds
from .prajna import (
    PrajnaVerdict,
    TransportGap,
    cubic_density_transport,
    cubic_flow,
    prajna_check,
    prajna_transport_gap,
    uniform_interval_density,
)
from .scalar import (
    ScalarLinearPair,
    s_statistic,
    scalar_affine_asymptote,
    w2_scalar_affine,
    w2_scalar_linear,
    w2_scalar_linear_discrete,
    w2_scalar_sde,
    w2_scalar_sde_gaussian,
)

__all__ = [
    "beta_beta_w2",
    "beta_correlation_integral",
    "beta_second_moment",
    "GaussianKlDiagnostic",
    "LogNoiseResult",
    "classify_log_noise",
    "gaussian_kl_diag",
    "log_noise_sign",
    "LtiBounds",
    "LtiPair",
    "lti_bound_series",
    "lti_bounds",
    "PrajnaVerdict",
    "TransportGap",
    "cubic_density_transport",
    "cubic_flow",
    "prajna_check",
    "prajna_transport_gap",
    "uniform_interval_density",
    "ScalarLinearPair",
    "s_statistic",
    "scalar_affine_asymptote",
    "w2_scalar_affine",
    "w2_scalar_linear",
    "w2_scalar_linear_discrete",
    "w2_scalar_sde",
    "w2_scalar_sde_gaussian",
]
