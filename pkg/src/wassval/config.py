"""
WassVal - Configuration
Loads numerical and runtime settings from environment variables with sensible defaults
"""

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings
from pydantic import Field


class Settings(BaseSettings):
    """Toolkit settings loaded from WASSVAL_* environment variables"""

    # === Logging ===
    log: str = Field(
        default="WARNING",
        description="Logging level (WASSVAL_LOG)"
    )

    # === Integration ===
    ode_dt: float = Field(
        default=0.01,
        description="Fixed RK4 step for characteristic and moment ODEs"
    )
    em_dt: float = Field(
        default=0.01,
        description="Euler-Maruyama step"
    )

    # === Region of attraction ===
    roa_horizon: float = Field(
        default=100.0,
        description="Integration horizon used to classify trajectories onto attractors"
    )
    roa_radius: float = Field(
        default=1e-3,
        description="Snap radius around an attractor"
    )

    # === Perron-Frobenius ===
    pf_nodes: int = Field(
        default=1024,
        description="Cell-midpoint nodes of a 1-D density grid"
    )
    pf_exact_depth: int = Field(
        default=12,
        description="Iterations for which analytic PF steps keep an exact evaluator"
    )
    ulam_samples: int = Field(
        default=64,
        description="Sample points per cell for the Ulam transfer matrix"
    )
    kernel_nodes: int = Field(
        default=200,
        description="Gauss-Legendre nodes for stochastic-kernel integrals"
    )
    kernel_tol: float = Field(
        default=1e-6,
        description="Relative change allowed when kernel nodes are doubled"
    )
    kernel_max_doublings: int = Field(
        default=4,
        description="Node doublings tried before a kernel integral is declared unconverged"
    )

    # === Quadrature ===
    quad_panels: int = Field(
        default=64,
        description="Uniform panels of the graded Gauss-Legendre rule on (0, 1)"
    )
    quad_order: int = Field(
        default=20,
        description="Gauss-Legendre order per panel"
    )
    quad_tol: float = Field(
        default=1e-9,
        description="Convergence tolerance of the panel-doubling check"
    )
    quad_max_doublings: int = Field(
        default=5,
        description="Panel doublings tried before a quadrature is declared unconverged"
    )

    # === Transport ===
    weight_tol: float = Field(
        default=1e-12,
        description="Tolerance on the total mass of an ensemble"
    )
    reduced_cost_tol: float = Field(
        default=1e-11,
        description="Optimality threshold on reduced costs (costs scaled by their maximum)"
    )
    psd_tol: float = Field(
        default=1e-10,
        description="Negative eigenvalues above -psd_tol are clamped to zero"
    )
    feasibility_tol: float = Field(
        default=1e-9,
        description="Allowed marginal residual of a transport plan"
    )
    degenerate_pivot_limit: int = Field(
        default=50,
        description="Consecutive degenerate pivots before switching to Bland pricing"
    )

    # === Certificates ===
    default_nu: int = Field(
        default=1000,
        description="Particles per sampled initial density"
    )
    threads: int = Field(
        default=1,
        description="Worker threads for density draws"
    )

    # === Output ===
    output_dir: str = Field(
        default="./output",
        description="Default directory for reports and plot data"
    )
    json_digits: int = Field(
        default=12,
        description="Decimal places kept in report and calculator JSON"
    )

    # === Paths ===
    @property
    def project_root(self) -> Path:
        """Get the project root directory"""
        return Path(__file__).parent.parent.parent

    @property
    def configs_dir(self) -> Path:
        """Get the shipped configs directory"""
        return self.project_root / "configs"

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "WASSVAL_"
        case_sensitive = False
        extra = "ignore"


# Global settings instance, created on first use
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get the toolkit settings.
    Creates the settings instance on first call (lazy loading).
    """
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """
    Reload settings from environment.
    Useful for testing or when env vars change.
    """
    global _settings
    _settings = Settings()
    return _settings
