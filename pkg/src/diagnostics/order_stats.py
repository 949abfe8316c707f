"""
Quantiles of uniform order statistics.

The i-th of b ordered U(0, 1) values follows Beta(i, b + 1 - i); its
quantiles are found by root-finding on the regularised incomplete beta.
"""

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc

from src.utils.errors import GevDomainError


def beta_quantile(q: float, a: float, b: float, xtol: float = 1e-14) -> float:
    """x such that I_x(a, b) = q."""
    if not 0.0 < q < 1.0:
        raise GevDomainError("beta quantile level must lie in (0, 1)")
    if a <= 0 or b <= 0:
        raise GevDomainError("beta shape parameters must be positive")
    return float(brentq(lambda x: betainc(a, b, x) - q, 0.0, 1.0, xtol=xtol, rtol=4 * np.finfo(float).eps))


def plotting_positions(b: int) -> np.ndarray:
    return np.arange(1, b + 1) / (b + 1.0)


def order_statistic_bands(b: int, level: float = 0.95) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise (lo, hi) bands for the b uniform order statistics."""
    if b < 1:
        raise GevDomainError("need at least one block for order-statistic bands")
    tail = (1.0 - level) / 2.0
    lo = np.empty(b)
    hi = np.empty(b)
    for i in range(1, b + 1):
        lo[i - 1] = beta_quantile(tail, i, b + 1 - i)
        hi[i - 1] = beta_quantile(1.0 - tail, i, b + 1 - i)
    return lo, hi
