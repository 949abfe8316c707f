"""
Missing-completely-at-random masking of simulated blocks.
"""

import math
from enum import Enum

import numpy as np

from src.utils.errors import ConfigError


class MissingnessMode(str, Enum):
    UNIFORM = "uniform"   # per-block proportion drawn from U(0, miss_upper)
    FIXED = "fixed"       # exactly floor(miss_upper * n) removed from every block


def _check_upper(miss_upper: float):
    if not 0.0 <= miss_upper < 1.0:
        raise ConfigError(f"miss_upper must lie in [0, 1), got {miss_upper}")


def impose_missingness(
    block: np.ndarray,
    miss_upper: float,
    rng: np.random.Generator,
    mode: MissingnessMode = MissingnessMode.UNIFORM,
) -> tuple[float, int]:
    """
    Remove positions chosen uniformly without replacement and return
    (maximum of the survivors, number of survivors).

    In uniform mode the count is floor(pi * n) plus one with probability
    frac(pi * n), so on average pi * n values go; fixed mode removes exactly
    floor(miss_upper * n). At least one value always survives.
    """
    block = np.asarray(block, dtype=float).reshape(-1)
    if block.size == 0:
        raise ValueError("cannot mask an empty block")
    _check_upper(miss_upper)
    n = block.size
    if MissingnessMode(mode) is MissingnessMode.UNIFORM:
        expected = rng.uniform(0.0, miss_upper) * n
        n_removed = math.floor(expected)
        if rng.random() < expected - n_removed:
            n_removed += 1
    else:
        n_removed = math.floor(miss_upper * n)
    n_removed = min(n_removed, n - 1)
    if n_removed == 0:
        return float(block.max()), n
    keep = np.ones(n, dtype=bool)
    keep[rng.choice(n, size=n_removed, replace=False)] = False
    return float(block[keep].max()), n - n_removed


def mask_blocks(
    blocks: np.ndarray,
    miss_upper: float,
    rng: np.random.Generator,
    mode: MissingnessMode = MissingnessMode.UNIFORM,
) -> tuple[np.ndarray, np.ndarray]:
    """Apply impose_missingness to each row of a (b, n) array, in row order."""
    results = [impose_missingness(row, miss_upper, rng, mode) for row in np.asarray(blocks)]
    maxima = np.array([m for m, _ in results])
    n_obs = np.array([k for _, k in results], dtype=np.int64)
    return maxima, n_obs
