"""
WassVal - Certificate sample sizes
Number of sampled initial densities behind a PRVC (Chernoff) or a PWVC (worst case)
"""

import math

from ..transport.complexity import ceil_count


def _check(epsilon: float, delta: float) -> None:
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")


def n_chernoff(epsilon: float, delta: float) -> int:
    """
    Draws that make every empirical validation probability epsilon-accurate
    with confidence 1 - delta.

    Args:
        epsilon: Accuracy in (0, 1)
        delta: Confidence parameter in (0, 1)

    Returns:
        ceil(log(2 / delta) / (2 epsilon^2))
    """
    _check(epsilon, delta)
    return ceil_count(math.log(2.0 / delta) / (2.0 * epsilon**2))


def n_worstcase(epsilon: float, delta: float) -> int:
    """Draws after which the empirical maximum exceeds all but an epsilon fraction, w.p. 1 - delta."""
    _check(epsilon, delta)
    return ceil_count(math.log(1.0 / delta) / math.log(1.0 / (1.0 - epsilon)))
