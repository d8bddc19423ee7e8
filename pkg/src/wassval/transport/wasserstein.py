"""
WassVal - Wasserstein distances
Order-2 Wasserstein distance between weighted point clouds (transportation LP),
between 1-D laws (quantile formula) and between Gaussians (closed form)
"""

import logging
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from ..config import get_settings
from ..densities.cdf import Cdf1D, GridCdf, StepCdf
from ..densities.ensemble import ParticleEnsemble
from ..densities.families import Gaussian
from ..errors import IndefiniteCovarianceError
from ..quadrature import integrate
from .plan import TransportPlan
from .simplex import solve_transportation

logger = logging.getLogger(__name__)


# === Point clouds ===

def _prepared(ensemble: ParticleEnsemble) -> tuple[ParticleEnsemble, np.ndarray]:
    """Drop zero weights and merge colocated points; returns the ensemble and, per
    original particle, its index in the prepared ensemble (-1 when pruned)."""
    keep = np.flatnonzero(ensemble.weights > 0)
    pruned = ensemble.pruned()
    merged, inverse = pruned.merged()
    index = np.full(ensemble.size, -1, dtype=np.intp)
    index[keep] = inverse
    return merged, index


def _lexicographic_order(points: np.ndarray) -> np.ndarray:
    return np.lexsort(points.T[::-1])


def _monotone_split(member_weights: np.ndarray, partner_flows: np.ndarray) -> list[tuple[int, int, float]]:
    """Monotone coupling between two mass vectors of equal total (interval overlaps)."""
    a = np.cumsum(member_weights)
    b = np.cumsum(partner_flows)
    b *= a[-1] / b[-1]
    b[-1] = a[-1]
    out = []
    k = r = 0
    low = 0.0
    while k < a.size and r < b.size:
        high = min(a[k], b[r])
        if high > low:
            out.append((k, r, high - low))
            low = high
        if a[k] <= b[r]:
            k += 1
        else:
            r += 1
    return out


def _split_rows(flows: sparse.csr_matrix, index: np.ndarray, weights: np.ndarray) -> sparse.csr_matrix:
    """
    Expand merged rows back onto the original particles.

    Each merged row is shared among its members by a monotone split, which adds at
    most (members - 1) positive couplings per merged row.
    """
    size = index.size
    out_rows, out_cols, out_mass = [], [], []
    members_of: dict[int, list[int]] = {}
    for original, merged in enumerate(index.tolist()):
        if merged >= 0:
            members_of.setdefault(merged, []).append(original)
    for merged, members in members_of.items():
        row = flows.getrow(merged)
        partners, masses = row.indices, row.data
        positive = masses > 0
        partners, masses = partners[positive], masses[positive]
        if masses.size == 0:
            continue
        if len(members) == 1:
            out_rows.extend([members[0]] * partners.size)
            out_cols.extend(partners.tolist())
            out_mass.extend(masses.tolist())
            continue
        for k, r, mass in _monotone_split(weights[members], masses):
            out_rows.append(members[k])
            out_cols.append(int(partners[r]))
            out_mass.append(mass)
    return sparse.csr_matrix((out_mass, (out_rows, out_cols)), shape=(size, flows.shape[1]))


def w2_lp(source: ParticleEnsemble, target: ParticleEnsemble) -> tuple[float, TransportPlan]:
    """
    Order-2 Wasserstein distance between two weighted point clouds.

    Solves the balanced transportation LP with squared Euclidean edge costs. Zero
    weights are pruned and colocated points merged before solving; equally weighted
    clouds of equal size go through the assignment solver. The returned plan is
    expressed in the original particle order of both ensembles.

    Args:
        source: m weighted points
        target: n weighted points of the same dimension (m and n may differ)

    Returns:
        (W2, TransportPlan)
    """
    if source.dim != target.dim:
        raise ValueError(f"point dimensions differ: {source.dim} vs {target.dim}")

    src, src_index = _prepared(source)
    tgt, tgt_index = _prepared(target)
    cost = cdist(src.points, tgt.points, metric="sqeuclidean")
    m, n = cost.shape

    iterations = 0
    uniform = m == n and np.ptp(src.weights) == 0 and np.ptp(tgt.weights) == 0
    if uniform:
        r, c = linear_sum_assignment(cost)
        flows = sparse.csr_matrix((np.full(m, 1.0 / m), (r, c)), shape=(m, n))
    else:
        src_order = _lexicographic_order(src.points)
        tgt_order = _lexicographic_order(tgt.points)
        result = solve_transportation(
            cost[np.ix_(src_order, tgt_order)],
            src.weights[src_order],
            tgt.weights[tgt_order],
        )
        iterations = result.iterations
        flows = sparse.csr_matrix(
            (result.flows, (src_order[result.rows], tgt_order[result.cols])), shape=(m, n)
        )
        flows.eliminate_zeros()

    objective = float(flows.multiply(cost).sum())

    coupling = _split_rows(flows, src_index, source.weights)
    coupling = _split_rows(coupling.T.tocsr(), tgt_index, target.weights).T.tocsr()
    coupling.eliminate_zeros()

    plan = TransportPlan(
        coupling=coupling,
        source_weights=source.weights,
        target_weights=target.weights,
        cost=max(objective, 0.0),
        iterations=iterations,
    )
    tol = get_settings().feasibility_tol
    if not plan.is_feasible(tol):
        logger.warning(
            f"Transport plan residuals above {tol}: rows {plan.row_residual():.2e}, "
            f"columns {plan.column_residual():.2e}"
        )
    return plan.w2, plan


# === One dimension ===

def coupling_cdf(F: Cdf1D, G: Cdf1D, y, y_hat) -> np.ndarray:
    """Optimal joint CDF min(F(y), G(y_hat)) of the monotone coupling."""
    return np.minimum(F(y), G(y_hat))


def _breakpoints(distribution: Cdf1D) -> Optional[np.ndarray]:
    if isinstance(distribution, (StepCdf, GridCdf)):
        return distribution.levels
    return None


def wasserstein_1d(
    F: Cdf1D,
    G: Cdf1D,
    order: int = 2,
    panels: Optional[int] = None,
    quad_order: Optional[int] = None,
    tol: Optional[float] = None,
) -> float:
    """
    Order-q Wasserstein distance between 1-D laws from their quantile functions,
    (integral over (0, 1) of |F^-1 - G^-1|^q)^(1/q).

    Two step CDFs are integrated exactly on the merged level sets; otherwise a graded
    composite Gauss-Legendre rule is used with the step levels as extra breakpoints.

    Raises:
        QuadratureError: if panel doubling does not converge
    """
    if order < 1:
        raise ValueError("order must be >= 1")

    if isinstance(F, StepCdf) and isinstance(G, StepCdf):
        levels = np.union1d(F.levels, G.levels)
        levels = levels[(levels > 0) & (levels <= 1)]
        edges = np.concatenate(([0.0], levels))
        widths = np.diff(edges)
        keep = widths > 0
        mid = 0.5 * (edges[:-1] + edges[1:])[keep]
        gap = np.abs(F.quantile(mid) - G.quantile(mid)) ** order
        return float(np.dot(widths[keep], gap) ** (1.0 / order))

    extra = [b for b in (_breakpoints(F), _breakpoints(G)) if b is not None]
    extra_breaks = np.concatenate(extra) if extra else None

    def integrand(u: np.ndarray) -> np.ndarray:
        return np.abs(F.quantile(u) - G.quantile(u)) ** order

    value = integrate(integrand, 0.0, 1.0, panels=panels, order=quad_order, tol=tol,
                      extra_breaks=extra_breaks)
    return float(max(value, 0.0) ** (1.0 / order))


def w2_1d(
    F: Cdf1D,
    G: Cdf1D,
    panels: Optional[int] = None,
    quad_order: Optional[int] = None,
    tol: Optional[float] = None,
) -> float:
    """Order-2 Wasserstein distance between two 1-D CDFs."""
    return wasserstein_1d(F, G, order=2, panels=panels, quad_order=quad_order, tol=tol)


# === Gaussians ===

def sqrtm_psd(matrix: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    Symmetric square root of a positive semidefinite matrix by eigendecomposition.

    Eigenvalues in [-tol, 0) are clamped to zero.

    Raises:
        IndefiniteCovarianceError: an eigenvalue below -tol
    """
    tol = get_settings().psd_tol if tol is None else tol
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    symmetric = 0.5 * (matrix + matrix.T)
    eigenvalues, eigenvectors = np.linalg.eigh(symmetric)
    if eigenvalues.min() < -tol:
        raise IndefiniteCovarianceError(
            f"matrix has eigenvalue {eigenvalues.min():.3e} below -{tol:g}"
        )
    root = (eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ eigenvectors.T
    return 0.5 * (root + root.T)


def gaussian_trace_term(cov1: np.ndarray, cov2: np.ndarray) -> float:
    """tr(S1 + S2 - 2 (S1^1/2 S2 S1^1/2)^1/2), zero for identical covariances."""
    if np.array_equal(cov1, cov2):
        return 0.0
    root1 = sqrtm_psd(cov1)
    cross = sqrtm_psd(root1 @ cov2 @ root1)
    return float(max(np.trace(cov1) + np.trace(cov2) - 2.0 * np.trace(cross), 0.0))


def w2_gaussian(g1: Gaussian, g2: Gaussian) -> float:
    """
    Closed-form W2 between two Gaussians:
    sqrt(|m1 - m2|^2 + tr(S1 + S2 - 2 (S1^1/2 S2 S1^1/2)^1/2)).
    """
    if g1.dim != g2.dim:
        raise ValueError(f"Gaussian dimensions differ: {g1.dim} vs {g2.dim}")
    shift = float(np.sum((g1.mean - g2.mean) ** 2))
    return float(np.sqrt(shift + gaussian_trace_term(g1.cov, g2.cov)))
