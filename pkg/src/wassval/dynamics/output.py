"""
WassVal - Output push-forward
Maps state ensembles and density values through an output map y = h(x)
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..densities.ensemble import ParticleEnsemble
from ..errors import DomainError
from .liouville import WeightedDensityEnsemble
from .models import OutputBranch

logger = logging.getLogger(__name__)

JACOBIAN_TOL = 1e-300


@dataclass(frozen=True, eq=False)
class OutputEnsemble:
    """Output points with carried weights and, when tracked, output density values"""

    ensemble: ParticleEnsemble
    density: Optional[np.ndarray] = None


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[:, None] if x.ndim == 1 else x


def _abs_jacobian(branch: OutputBranch, states: np.ndarray) -> np.ndarray:
    det = np.abs(np.asarray(branch.jacobian_det(states), dtype=float).reshape(states.shape[0]))
    small = det <= JACOBIAN_TOL
    if small.any():
        raise DomainError(
            "vanishing Jacobian determinant of the output map",
            location=f"x={states[int(np.argmax(small))].tolist()}",
        )
    return det


def output_pdf(
    y,
    branches: Sequence[OutputBranch],
    state_pdf: Callable[[np.ndarray], np.ndarray],
) -> np.ndarray:
    """
    Output density at y: the sum over inverse branches of xi(x_j) / |det J(x_j)| with
    x_j = h_j^{-1}(y).

    Raises:
        ValueError: no branches supplied
        DomainError: a branch has a vanishing Jacobian determinant at its preimage
    """
    if not branches:
        raise ValueError("output_pdf needs at least one inverse branch")
    y = _rows(y)
    total = np.zeros(y.shape[0])
    for branch in branches:
        states = _rows(branch.inverse(y))
        total += np.asarray(state_pdf(states), dtype=float).reshape(y.shape[0]) / _abs_jacobian(branch, states)
    return total


def push_output(
    states: Union[WeightedDensityEnsemble, ParticleEnsemble],
    h: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    branches: Sequence[OutputBranch] = (),
    state_pdf: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> OutputEnsemble:
    """
    Push states through h, carrying weights.

    Density values are tracked for a WeightedDensityEnsemble when branches are given:
    with one branch each value is divided by |det J| at its own state; with several
    branches the density at each output point sums every preimage, which needs the
    state density `state_pdf`.

    Raises:
        ValueError: several branches without a state density
        DomainError: vanishing Jacobian determinant at an evaluation point
    """
    ensemble = states.ensemble if isinstance(states, WeightedDensityEnsemble) else states
    points = ensemble.points if h is None else _rows(h(ensemble.points))
    if points.shape[0] != ensemble.size:
        raise ValueError("output map must return one row per state")
    pushed = ParticleEnsemble(points, ensemble.weights)

    density = None
    values = states.density if isinstance(states, WeightedDensityEnsemble) else None
    if branches:
        if len(branches) == 1 and values is not None:
            density = values / _abs_jacobian(branches[0], ensemble.points)
        elif state_pdf is not None:
            density = output_pdf(points, branches, state_pdf)
        elif len(branches) > 1:
            raise ValueError("several output branches need the state density to sum preimages")
    elif values is not None and h is None:
        density = values
    return OutputEnsemble(pushed, density)
