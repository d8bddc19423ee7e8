"""
WassVal - Cubic model invalidation
Reachability check for x' = -p x^3 between interval-valued measurements, the exact
density transport of that model, and the W2 degree of validation built on it
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from ..densities.cdf import GridCdf, cdf
from ..densities.families import DensityFamily
from ..transport.wasserstein import w2_1d

logger = logging.getLogger(__name__)

Interval = Sequence[float]


@dataclass(frozen=True)
class PrajnaVerdict:
    """Outcome of the reachability check; `witness` is 2 min|x_T|^2 min(p) T"""

    witness: float
    invalidated: bool

    @property
    def verdict(self) -> str:
        return "invalidated" if self.invalidated else "not-invalidated"

    def to_dict(self) -> dict:
        return {"witness": self.witness, "verdict": self.verdict}


def _interval(values: Interval, name: str) -> tuple[float, float]:
    lower, upper = (float(v) for v in values)
    if not lower <= upper:
        raise ValueError(f"{name} interval [{lower}, {upper}] is empty")
    return lower, upper


def prajna_check(x0: Interval, x_t: Interval, p: Interval, t: float) -> PrajnaVerdict:
    """
    Can the uniform law on X_T at time T be reached from X0 under x' = -p x^3, p in P?

    The recovered initial density needs 1 > 2 x_T^2 p T everywhere on X_T x P. The
    left side is increasing in |x_T| and p, so the binding corner is min|x_T|, min p.
    The model is invalidated when 2 min|x_T|^2 min(p) T >= 1.

    Raises:
        ValueError: empty interval, X_T containing 0, P not inside (0, inf) or T < 0
    """
    _interval(x0, "X0")
    xt_lower, xt_upper = _interval(x_t, "X_T")
    p_lower, _ = _interval(p, "P")
    if t < 0:
        raise ValueError("T must be nonnegative")
    if xt_lower <= 0.0 <= xt_upper:
        raise ValueError("X_T must be bounded away from 0 for the monotonicity argument to hold")
    if p_lower <= 0:
        raise ValueError("P must lie in (0, inf)")
    smallest = min(abs(xt_lower), abs(xt_upper))
    witness = 2.0 * smallest ** 2 * p_lower * t
    result = PrajnaVerdict(witness=float(witness), invalidated=bool(witness >= 1.0))
    logger.info(f"Cubic reachability witness {witness:.6g}: {result.verdict}")
    return result


def cubic_flow(x0, p, t: float) -> np.ndarray:
    """x(T) = x0 / sqrt(1 + 2 x0^2 p T)"""
    x0 = np.asarray(x0, dtype=float)
    return x0 / np.sqrt(1.0 + 2.0 * x0 ** 2 * np.asarray(p, dtype=float) * t)


def cubic_density_transport(
    xi_t: Callable[[np.ndarray, np.ndarray], np.ndarray], t: float
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """
    Initial density that the cubic model carries onto xi_T at time T:

        xi0(x0, p) = (1 + 2 x0^2 p T)^(-3/2) xi_T(x0 / sqrt(1 + 2 x0^2 p T), p)
    """
    if t < 0:
        raise ValueError("T must be nonnegative")

    def xi0(x0, p) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        p = np.asarray(p, dtype=float)
        stretch = 1.0 + 2.0 * x0 ** 2 * p * t
        return stretch ** -1.5 * np.asarray(xi_t(x0 / np.sqrt(stretch), p), dtype=float)
    return xi0


@dataclass(frozen=True)
class TransportGap:
    """W2 between the recovered and the supplied initial density, and the recovered mass"""

    w2: float
    recovered_mass: float


def prajna_transport_gap(
    xi_t: Callable[[np.ndarray, np.ndarray], np.ndarray],
    t: float,
    p: float,
    initial: DensityFamily,
    x0_interval: Interval,
    n: int = 4096,
) -> TransportGap:
    """
    Degree of validation for the cubic model at a fixed parameter: the recovered
    initial density on X0 (renormalized on a midpoint grid of n cells) compared with
    the supplied initial law through the quantile formula.
    """
    lower, upper = _interval(x0_interval, "X0")
    if n < 2:
        raise ValueError("n must be >= 2")
    edges = np.linspace(lower, upper, n + 1)
    midpoints = 0.5 * (edges[:-1] + edges[1:])
    values = cubic_density_transport(xi_t, t)(midpoints, np.full(n, p))
    masses = values * np.diff(edges)
    total = float(masses.sum())
    if total <= 0:
        raise ValueError("recovered density has no mass on X0")
    recovered = GridCdf(edges, masses / total)
    return TransportGap(w2=w2_1d(recovered, cdf(initial)), recovered_mass=total)


def uniform_interval_density(interval: Interval) -> Callable[[np.ndarray, Optional[np.ndarray]], np.ndarray]:
    """Uniform density on an interval in x, constant in the parameter."""
    lower, upper = _interval(interval, "interval")
    height = 1.0 / (upper - lower)

    def density(x, p=None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.where((x >= lower) & (x <= upper), height, 0.0)
    return density
