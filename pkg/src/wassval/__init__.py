"""
WassVal - Wasserstein Model Validation
Density propagation, order-2 Wasserstein gaps and randomized validation certificates
"""

__version__ = "1.0.0"

# Main exports
from .config import get_settings
from .certificates import construct_prvc, construct_pwvc, n_chernoff, n_worstcase
from .errors import WassvalError
from .services import emit_plot_data, run_validate
from .transport import w2_1d, w2_gaussian, w2_lp

__all__ = [
    "get_settings",
    "construct_prvc",
    "construct_pwvc",
    "n_chernoff",
    "n_worstcase",
    "WassvalError",
    "emit_plot_data",
    "run_validate",
    "w2_1d",
    "w2_gaussian",
    "w2_lp",
]
