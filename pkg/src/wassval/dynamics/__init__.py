"""
WassVal - Dynamics
Models and forward propagation of densities
"""

from .liouville import WeightedDensityEnsemble, propagate_liouville, rk4_flow
from .models import (
    AdditiveNoiseMap,
    DeterministicMap,
    DynamicsModel,
    MapModel,
    MultiplicativeNoiseMap,
    OdeModel,
    OutputBranch,
    SdeModel,
)
from .output import OutputEnsemble, output_pdf, push_output
from .perron_frobenius import DensityGrid1D, pf_iterate, pf_step, ulam_matrix
from .registry import MODEL_REGISTRY, build_model, register_model
from .simulate import (
    EulerMaruyamaSimulator,
    LiouvilleSimulator,
    MapSimulator,
    Simulator,
    simulator_for,
)
from .stationary import (
    DensityGrid2D,
    DiracStationaryResult,
    GaussianMoments,
    dirac_stationary,
    is_hurwitz,
    linear_gaussian_moments,
    stationary_hamiltonian,
    stationary_linear_sde,
)
from .stochastic import propagate_em

__all__ = [
    "AdditiveNoiseMap",
    "DeterministicMap",
    "DynamicsModel",
    "MapModel",
    "MultiplicativeNoiseMap",
    "OdeModel",
    "OutputBranch",
    "SdeModel",
    "WeightedDensityEnsemble",
    "propagate_liouville",
    "rk4_flow",
    "propagate_em",
    "OutputEnsemble",
    "output_pdf",
    "push_output",
    "DensityGrid1D",
    "pf_step",
    "pf_iterate",
    "ulam_matrix",
    "MODEL_REGISTRY",
    "build_model",
    "register_model",
    "Simulator",
    "LiouvilleSimulator",
    "EulerMaruyamaSimulator",
    "MapSimulator",
    "simulator_for",
    "DensityGrid2D",
    "DiracStationaryResult",
    "GaussianMoments",
    "dirac_stationary",
    "is_hurwitz",
    "linear_gaussian_moments",
    "stationary_hamiltonian",
    "stationary_linear_sde",
]
