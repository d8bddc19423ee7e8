"""
WassVal - Perron-Frobenius operators
Density evolution under 1-D maps: closed-form two-branch operators for the Chebyshev
and logistic maps, Ulam transfer matrices for other deterministic maps, and kernel
quadrature for maps with multiplicative or additive noise
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import sparse
from scipy.interpolate import CubicSpline

from ..config import get_settings
from ..densities.cdf import GridCdf
from ..errors import DomainError, QuadratureError
from ..quadrature import composite_rule, graded_breaks
from .models import AdditiveNoiseMap, DeterministicMap, MapModel, MultiplicativeNoiseMap

logger = logging.getLogger(__name__)

DensityFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class DensityGrid1D:
    """
    Density values at the cell midpoints of a uniform grid on [lower, upper].

    Midpoints keep endpoint singularities of arcsine-type densities off the grid. The
    integral is the midpoint rule. `evaluator`, when present, is an exact pointwise
    form of the same density and `depth` counts the operator steps composed into it.
    """

    lower: float
    upper: float
    values: np.ndarray
    evaluator: Optional[DensityFn] = None
    depth: int = 0

    def __post_init__(self):
        if not self.upper > self.lower:
            raise ValueError("grid needs upper > lower")
        values = np.array(self.values, dtype=float).ravel()
        if values.size < 2:
            raise ValueError("grid needs at least two cells")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls, fn: DensityFn, lower: float, upper: float, nodes: Optional[int] = None, exact: bool = True
    ) -> "DensityGrid1D":
        nodes = nodes or get_settings().pf_nodes
        h = (upper - lower) / nodes
        midpoints = lower + h * (np.arange(nodes) + 0.5)
        return cls(lower, upper, np.asarray(fn(midpoints), dtype=float), fn if exact else None)

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def width(self) -> float:
        return (self.upper - self.lower) / self.size

    @property
    def nodes(self) -> np.ndarray:
        return self.lower + self.width * (np.arange(self.size) + 0.5)

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.size + 1)

    def integral(self) -> float:
        return float(self.width * self.values.sum())

    def cell_masses(self) -> np.ndarray:
        return self.width * self.values

    def normalized(self) -> "DensityGrid1D":
        """Values scaled to unit integral; the exact evaluator is dropped."""
        total = self.integral()
        if total <= 0:
            raise ValueError("density grid has no mass")
        return DensityGrid1D(self.lower, self.upper, self.values / total)

    def __call__(self, x) -> np.ndarray:
        """Density at arbitrary points: exact when available, else linear interpolation."""
        x = np.asarray(x, dtype=float)
        if self.evaluator is not None:
            return np.asarray(self.evaluator(x), dtype=float)
        inside = (x >= self.lower) & (x <= self.upper)
        return np.where(inside, np.interp(x, self.nodes, self.values), 0.0)

    def cdf(self) -> GridCdf:
        return GridCdf(self.edges, self.cell_masses())

    def mean(self) -> float:
        return float(np.dot(self.cell_masses(), self.nodes) / self.integral())


# === Closed-form operators ===

def _chebyshev_operator(density: DensityFn) -> DensityFn:
    def stepped(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.sqrt((x + 1.0) / 2.0)
        return (density(r) + density(-r)) / (2.0 * np.sqrt(2.0 * x + 2.0))
    return stepped


def _logistic_operator(density: DensityFn) -> DensityFn:
    def stepped(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        s = np.sqrt(1.0 - x)
        return (density((1.0 + s) / 2.0) + density((1.0 - s) / 2.0)) / (4.0 * s)
    return stepped


ANALYTIC_OPERATORS = {
    "chebyshev": (_chebyshev_operator, (-1.0, 1.0)),
    "logistic": (_logistic_operator, (0.0, 1.0)),
}


def _require_domain(grid: DensityGrid1D, domain: Optional[tuple[float, float]], name: str) -> None:
    if domain is None:
        return
    if grid.lower < domain[0] or grid.upper > domain[1]:
        raise DomainError(
            f"grid [{grid.lower}, {grid.upper}] leaves the domain [{domain[0]}, {domain[1]}] of {name}"
        )


def _analytic_step(kind: str, grid: DensityGrid1D, exact_depth: int) -> DensityGrid1D:
    """
    Two-branch preimage step of the Chebyshev or logistic operator.

    While the composed evaluator is shallower than `exact_depth` the step is exact
    and is not renormalized: the operator preserves mass, so the grid integral only
    differs from 1 by the midpoint-rule error. Past that depth the previous values
    are interpolated and the result is renormalized to unit integral.
    """
    operator, _ = ANALYTIC_OPERATORS[kind]
    if grid.evaluator is not None and grid.depth < exact_depth:
        stepped = operator(grid.evaluator)
        return DensityGrid1D(grid.lower, grid.upper, stepped(grid.nodes), stepped, grid.depth + 1)
    # past the exact depth the previous iterate is interpolated at the preimages
    previous = DensityGrid1D(grid.lower, grid.upper, grid.values)
    stepped = operator(previous)
    return DensityGrid1D(grid.lower, grid.upper, stepped(grid.nodes)).normalized()


# === Ulam ===

def ulam_matrix(
    transform: Callable[[np.ndarray], np.ndarray],
    lower: float,
    upper: float,
    cells: int,
    samples: Optional[int] = None,
) -> sparse.csr_matrix:
    """
    Row-stochastic Ulam transfer matrix: entry (i, j) is the fraction of `samples`
    evenly spaced points of cell i that land in cell j.

    Raises:
        DomainError: a sample is mapped outside [lower, upper]
    """
    samples = samples or get_settings().ulam_samples
    h = (upper - lower) / cells
    offsets = (np.arange(samples) + 0.5) / samples
    points = lower + h * (np.arange(cells)[:, None] + offsets[None, :])
    images = np.asarray(transform(points.ravel()), dtype=float)
    outside = (images < lower) | (images > upper) | ~np.isfinite(images)
    if outside.any():
        bad = points.ravel()[np.argmax(outside)]
        raise DomainError(f"map sends x={bad:.6g} outside [{lower}, {upper}]")
    target = np.clip(((images - lower) / h).astype(np.intp), 0, cells - 1)
    source = np.repeat(np.arange(cells), samples)
    matrix = sparse.csr_matrix(
        (np.full(source.size, 1.0 / samples), (source, target)), shape=(cells, cells)
    )
    matrix.sum_duplicates()
    return matrix


def _ulam_step(matrix: sparse.csr_matrix, grid: DensityGrid1D) -> DensityGrid1D:
    masses = matrix.T @ grid.cell_masses()
    return DensityGrid1D(grid.lower, grid.upper, masses / grid.width).normalized()


# === Stochastic kernels ===

def _spline_density(grid: DensityGrid1D) -> DensityFn:
    if grid.evaluator is not None:
        return grid.evaluator
    nodes = grid.nodes
    spline = CubicSpline(nodes, grid.values)

    def density(y: np.ndarray) -> np.ndarray:
        return np.clip(spline(np.clip(y, nodes[0], nodes[-1])), 0.0, None)
    return density


def _kernel_step(
    model: MapModel,
    grid: DensityGrid1D,
    target: tuple[float, float],
    nodes: int,
    tol: float,
    max_doublings: int,
    order: int = 20,
) -> DensityGrid1D:
    density = _spline_density(grid)
    cells = grid.size
    width = (target[1] - target[0]) / cells
    x = target[0] + width * (np.arange(cells) + 0.5)
    panels = max(1, nodes // order)

    def evaluate(p: int) -> np.ndarray:
        breaks = graded_breaks(grid.lower, grid.upper, p)
        y, w = composite_rule(breaks, order)
        return model.kernel(x[:, None], y[None, :]) @ (w * density(y))

    previous = evaluate(panels)
    for _ in range(max_doublings):
        panels *= 2
        current = evaluate(panels)
        change = float(np.max(np.abs(current - previous)))
        scale = max(float(np.max(np.abs(current))), np.finfo(float).tiny)
        if change <= tol * scale:
            return DensityGrid1D(target[0], target[1], current).normalized()
        previous = current
    raise QuadratureError(
        f"kernel quadrature of {model.name} did not converge (relative change {change / scale:.2e})"
    )


# === Operations ===

def pf_step(
    model: MapModel,
    density: DensityGrid1D,
    target: Optional[tuple[float, float]] = None,
    exact_depth: Optional[int] = None,
) -> DensityGrid1D:
    """
    One Perron-Frobenius step of a density grid.

    Chebyshev and logistic maps use their two-branch preimage formulas (exact while the
    composed evaluator is at most `exact_depth` deep, interpolated and renormalized
    after that); other deterministic maps use an Ulam transfer matrix; noisy maps
    integrate their stochastic kernel over the grid support with Gauss-Legendre
    node doubling. Approximate steps are renormalized to unit integral.

    Args:
        model: Map model
        density: Current density grid
        target: Output grid interval for noisy maps (defaults to the input interval)

    Raises:
        DomainError: grid outside the map domain or a preimage outside it
        QuadratureError: kernel integral failed the node-doubling check
    """
    settings = get_settings()
    if isinstance(model, DeterministicMap):
        if model.analytic is not None:
            if model.analytic not in ANALYTIC_OPERATORS:
                raise ValueError(f"no closed-form operator for {model.analytic!r}")
            _require_domain(density, ANALYTIC_OPERATORS[model.analytic][1], model.name)
            depth = settings.pf_exact_depth if exact_depth is None else exact_depth
            return _analytic_step(model.analytic, density, depth)
        _require_domain(density, model.domain, model.name)
        matrix = ulam_matrix(model.transform, density.lower, density.upper, density.size)
        return _ulam_step(matrix, density)

    if isinstance(model, (MultiplicativeNoiseMap, AdditiveNoiseMap)):
        _require_domain(density, model.domain, model.name)
        return _kernel_step(
            model,
            density,
            target or (density.lower, density.upper),
            settings.kernel_nodes,
            settings.kernel_tol,
            settings.kernel_max_doublings,
        )
    raise TypeError(f"pf_step needs a map model, got {type(model).__name__}")


def pf_iterate(model: MapModel, density: DensityGrid1D, steps: int) -> list[DensityGrid1D]:
    """Iterates [density, P density, ..., P^steps density]; Ulam matrices are built once."""
    history = [density]
    if isinstance(model, DeterministicMap) and model.analytic is None:
        _require_domain(density, model.domain, model.name)
        matrix = ulam_matrix(model.transform, density.lower, density.upper, density.size)
        for _ in range(steps):
            history.append(_ulam_step(matrix, history[-1]))
        return history
    for _ in range(steps):
        history.append(pf_step(model, history[-1]))
    return history
