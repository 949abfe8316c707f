"""
Raw-data distributions of the simulation study, sampled by inverse CDF.

maxar1 is the max-autoregressive process X_i = max((1 - theta) X_{i-1}, theta Z_i)
with unit Frechet innovations, returned on unit exponential margins.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import ndtri

from src.utils.errors import ConfigError


class DistributionTag(str, Enum):
    EXPONENTIAL = "exponential"
    GAUSSIAN = "gaussian"
    STUDENT_T2 = "student_t2"
    BETA_1_10 = "beta_1_10"
    MAXAR1 = "maxar1"


@dataclass(frozen=True)
class RawDistribution:
    tag: DistributionTag
    maxar_theta: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "tag", DistributionTag(self.tag))
        if self.tag is DistributionTag.MAXAR1:
            theta = 0.5 if self.maxar_theta is None else float(self.maxar_theta)
            if not 0.0 < theta <= 1.0:
                raise ConfigError(f"maxar_theta must lie in (0, 1], got {theta}")
            object.__setattr__(self, "maxar_theta", theta)
        elif self.maxar_theta is not None:
            raise ConfigError("maxar_theta only applies to the maxar1 distribution")

    @property
    def iid_marginal_assumption(self) -> bool:
        """True when the block-maximum law ignores serial dependence."""
        return self.tag is DistributionTag.MAXAR1


def _uniform_open(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniforms on (0, 1); Generator.random can return exactly 0."""
    u = rng.random(size)
    zero = u == 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    return u


def student_t2_quantile(p):
    p = np.asarray(p, dtype=float)
    return (2.0 * p - 1.0) / np.sqrt(2.0 * p * (1.0 - p))


def _maxar1(theta: float, size: int, rng: np.random.Generator) -> np.ndarray:
    # unit Frechet: X_0 and Z_1..Z_size
    frechet = -1.0 / np.log(_uniform_open(rng, size + 1))
    if theta == 1.0:
        x = frechet[1:]
    else:
        # X_i = max_k (1-theta)^(i-k) * c_k with c_0 = X_0, c_k = theta Z_k;
        # in logs a running maximum of log c_k - k log(1-theta)
        log_decay = math.log1p(-theta)
        c = frechet.copy()
        c[1:] *= theta
        k = np.arange(size + 1)
        running = np.maximum.accumulate(np.log(c) - k * log_decay)
        x = np.exp(running + k * log_decay)[1:]
    # order-preserving map to unit exponential: -log(1 - exp(-1/x))
    return -np.log(-np.expm1(-1.0 / x))


def simulate_raw(dist: RawDistribution, size: int, rng: np.random.Generator) -> np.ndarray:
    """`size` raw values (n * b for a study replicate) from `dist`."""
    if dist.tag is DistributionTag.MAXAR1:
        return _maxar1(dist.maxar_theta, size, rng)
    u = _uniform_open(rng, size)
    if dist.tag is DistributionTag.EXPONENTIAL:
        return -np.log(u)
    if dist.tag is DistributionTag.GAUSSIAN:
        return ndtri(u)
    if dist.tag is DistributionTag.STUDENT_T2:
        return student_t2_quantile(u)
    # Beta(1, 10): F(x) = 1 - (1 - x)^10
    return -np.expm1(0.1 * np.log1p(-u))


def true_return_level(dist: RawDistribution, n: int, r: float) -> float:
    """
    Exact r-block return level of the maximum of n i.i.d. draws,
    z = F^-1((1 - 1/r)^(1/n)). maxar1 uses its exponential margin.
    """
    if r <= 1:
        raise ConfigError("return period must exceed 1 block")
    if n < 1:
        raise ConfigError("block length must be positive")
    log_p = math.log1p(-1.0 / r) / n
    upper = -math.expm1(log_p)  # 1 - p without cancellation
    if dist.tag in (DistributionTag.EXPONENTIAL, DistributionTag.MAXAR1):
        return -math.log(upper)
    if dist.tag is DistributionTag.GAUSSIAN:
        return -float(ndtri(upper))
    if dist.tag is DistributionTag.STUDENT_T2:
        return (1.0 - 2.0 * upper) / math.sqrt(2.0 * upper * (1.0 - upper))
    return 1.0 - upper ** 0.1
