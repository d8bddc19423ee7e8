"""
WassVal - Transport plans
Optimal couplings returned by the transportation LP
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """
    Coupling masses between a source and a target ensemble.

    `coupling` is an (m, n) sparse matrix in the original particle order of both
    ensembles; `cost` is the achieved squared transport cost.
    """

    coupling: sparse.csr_matrix
    source_weights: np.ndarray
    target_weights: np.ndarray
    cost: float
    iterations: int = 0

    @property
    def w2(self) -> float:
        return float(np.sqrt(max(self.cost, 0.0)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.coupling.shape

    @property
    def support_size(self) -> int:
        """Number of strictly positive couplings."""
        return int(np.count_nonzero(self.coupling.data > 0))

    def row_residual(self) -> float:
        rows = np.asarray(self.coupling.sum(axis=1)).ravel()
        return float(np.max(np.abs(rows - self.source_weights)))

    def column_residual(self) -> float:
        cols = np.asarray(self.coupling.sum(axis=0)).ravel()
        return float(np.max(np.abs(cols - self.target_weights)))

    def is_feasible(self, tol: float = 1e-9) -> bool:
        return (
            self.row_residual() <= tol
            and self.column_residual() <= tol
            and bool(np.all(self.coupling.data >= 0))
        )

    def triplets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Positive couplings as (i, j, mass) arrays sorted by (i, j)."""
        coo = self.coupling.tocoo()
        keep = coo.data > 0
        i, j, mass = coo.row[keep], coo.col[keep], coo.data[keep]
        order = np.lexsort((j, i))
        return i[order], j[order], mass[order]

    def __repr__(self) -> str:
        m, n = self.shape
        return f"TransportPlan({m}x{n}, w2={self.w2:.6g}, support={self.support_size})"
