"""
WassVal - LP structure and sample complexity
Standard-form constraint matrix of the transportation LP and the sample count that
makes an empirical W2 estimate epsilon-accurate with confidence 1 - delta
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse


@dataclass(frozen=True)
class SampleComplexityParams:
    """
    Accuracy and confidence of an empirical Wasserstein estimate.

    `tci_constant` and `covering_constant` depend on the true and model dynamics and
    are supplied by the caller; nothing here infers them.
    """

    epsilon: float
    delta: float
    tci_constant: float
    covering_constant: float

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must lie in (0, 1]")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.tci_constant <= 0:
            raise ValueError("tci_constant must be positive")
        if self.covering_constant <= 0:
            raise ValueError("covering_constant must be positive")


def n_wass_bound(params: SampleComplexityParams) -> float:
    """Pre-ceiling bound (32 C / eps^2) log(2 K / delta)."""
    return 32.0 * params.tci_constant / params.epsilon ** 2 * math.log(2.0 * params.covering_constant / params.delta)


def ceil_count(bound: float) -> int:
    """Ceiling of a sample-count bound, at least 1; bounds within 1e-9 of an integer round to it."""
    return max(1, math.ceil(bound - 1e-9))


def n_wass(params: SampleComplexityParams) -> int:
    """Samples needed for the empirical W2 estimate."""
    return ceil_count(n_wass_bound(params))


def build_constraint_matrix(m: int, n: int) -> sparse.csr_matrix:
    """
    Equality constraints of the transportation LP in standard form, [e_n^T (x) I_m ; I_n (x) e_m^T].

    Variables are the coupling entries in column-major order (index j*m + i); the first
    m rows fix the source masses and the last n rows the target masses.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    rows_block = sparse.kron(np.ones((1, n)), sparse.identity(m), format="csr")
    cols_block = sparse.kron(sparse.identity(n), np.ones((1, m)), format="csr")
    return sparse.vstack([rows_block, cols_block], format="csr")
