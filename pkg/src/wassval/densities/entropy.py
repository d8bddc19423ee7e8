"""
WassVal - Beta entropy
"""

from scipy.special import betaln, digamma


def beta_entropy(alpha: float, beta: float) -> float:
    """
    Differential entropy of Beta(alpha, beta) on [0, 1].

    log B(a, b) - (a - 1)(psi(a) - psi(a + b)) - (b - 1)(psi(b) - psi(a + b))
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("beta parameters must be positive")
    total = digamma(alpha + beta)
    return float(
        betaln(alpha, beta)
        - (alpha - 1.0) * (digamma(alpha) - total)
        - (beta - 1.0) * (digamma(beta) - total)
    )
