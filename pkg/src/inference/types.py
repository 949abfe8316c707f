"""
Data and result types for block-maxima inference.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from src.gev.core import GevParams, MissingnessFraction
from src.utils.errors import GevDomainError


class EstimatorTag(str, Enum):
    """Estimators compared in the simulation study and the case studies."""
    ADJUST = "adjust"
    NAIVE = "naive"
    DISCARD = "discard"
    WEIGHT1 = "weight1"
    WEIGHT2 = "weight2"
    FULL = "full"


@dataclass(frozen=True)
class BlockRecord:
    block_id: int
    maximum: float
    n_obs: int
    n_full: int


@dataclass(frozen=True, eq=False)
class BlockMaximaSet:
    """
    Observed block maxima with their non-missing counts.

    Stored column-wise; `blocks` gives the record view. Each block carries
    its own full size so mixed 365/366-day years are represented exactly.
    """
    maxima: np.ndarray
    n_obs: np.ndarray
    block_n_full: np.ndarray
    block_ids: np.ndarray

    def __post_init__(self):
        maxima = np.array(self.maxima, dtype=float).reshape(-1)
        n_obs = np.array(self.n_obs).reshape(-1)
        n_full = np.array(self.block_n_full).reshape(-1)
        ids = np.array(self.block_ids).reshape(-1)
        if not (maxima.size == n_obs.size == n_full.size == ids.size):
            raise GevDomainError("block columns must have equal lengths")
        if not np.all(np.isfinite(maxima)):
            raise GevDomainError("block maxima must be finite")
        if n_obs.size and not (np.all(n_obs == np.round(n_obs)) and np.all(n_full == np.round(n_full))):
            raise GevDomainError("block counts must be integers")
        n_obs = n_obs.astype(np.int64)
        n_full = n_full.astype(np.int64)
        if np.any(n_obs < 1):
            raise GevDomainError("every block needs at least one non-missing value")
        if np.any(n_obs > n_full):
            raise GevDomainError("n_obs cannot exceed the full block size")
        ids = ids.astype(np.int64)
        for name, value in (("maxima", maxima), ("n_obs", n_obs), ("block_n_full", n_full), ("block_ids", ids)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @classmethod
    def from_arrays(cls, maxima, n_obs, n_full, block_ids=None) -> "BlockMaximaSet":
        maxima = np.asarray(maxima, dtype=float).reshape(-1)
        n_full_arr = np.broadcast_to(np.asarray(n_full), maxima.shape)
        if block_ids is None:
            block_ids = np.arange(1, maxima.size + 1)
        return cls(maxima, np.asarray(n_obs), n_full_arr, np.asarray(block_ids))

    @classmethod
    def from_records(cls, records: Iterable[BlockRecord]) -> "BlockMaximaSet":
        records = list(records)
        return cls(
            np.array([r.maximum for r in records], dtype=float),
            np.array([r.n_obs for r in records], dtype=np.int64),
            np.array([r.n_full for r in records], dtype=np.int64),
            np.array([r.block_id for r in records], dtype=np.int64),
        )

    @property
    def blocks(self) -> tuple[BlockRecord, ...]:
        return tuple(
            BlockRecord(int(i), float(m), int(k), int(n))
            for i, m, k, n in zip(self.block_ids, self.maxima, self.n_obs, self.block_n_full)
        )

    @property
    def n_blocks(self) -> int:
        return int(self.maxima.size)

    @property
    def n_full(self) -> int:
        """Largest full block size (the block size under no missingness)."""
        return int(self.block_n_full.max()) if self.n_blocks else 0

    @property
    def ratios(self) -> np.ndarray:
        return self.n_obs / self.block_n_full

    @property
    def is_complete(self) -> bool:
        return bool(np.all(self.n_obs == self.block_n_full))

    def fractions(self) -> list[MissingnessFraction]:
        return [MissingnessFraction(int(k), int(n)) for k, n in zip(self.n_obs, self.block_n_full)]

    def subset(self, mask) -> "BlockMaximaSet":
        mask = np.asarray(mask, dtype=bool)
        return BlockMaximaSet(self.maxima[mask], self.n_obs[mask], self.block_n_full[mask], self.block_ids[mask])

    def retain(self, min_fraction: float) -> "BlockMaximaSet":
        """Blocks whose non-missing fraction is at least `min_fraction`."""
        return self.subset(self.ratios >= min_fraction - 1e-12)

    def shifted(self, offset: float) -> "BlockMaximaSet":
        return BlockMaximaSet(self.maxima + offset, self.n_obs, self.block_n_full, self.block_ids)


@dataclass(frozen=True)
class FitOptions:
    """Knobs of the maximum-likelihood search."""
    discard_threshold: float = 0.10
    fatol_rel: float = 1e-10
    xatol: float = 1e-8
    max_iter: int = 2000
    restart: bool = True
    hessian_rel_step: float = 1e-5
    xi_start: float = 0.1
    record: bool = True

    def __post_init__(self):
        if not 0.0 <= self.discard_threshold < 1.0:
            raise GevDomainError("discard_threshold must lie in [0, 1)")
        if self.max_iter < 1:
            raise GevDomainError("max_iter must be positive")


@dataclass
class FitResult:
    params: GevParams
    loglik: float
    se: np.ndarray
    vcov: np.ndarray
    converged: bool
    n_blocks_used: int
    estimator: EstimatorTag
    message: str = ""
    n_evaluations: int = 0

    def to_dict(self) -> dict:
        return {
            "estimator": self.estimator.value,
            "params": {"mu": self.params.mu, "sigma": self.params.sigma, "xi": self.params.xi},
            "se": {"mu": float(self.se[0]), "sigma": float(self.se[1]), "xi": float(self.se[2])},
            "vcov": [[float(v) for v in row] for row in self.vcov],
            "loglik": float(self.loglik),
            "converged": bool(self.converged),
            "n_blocks_used": int(self.n_blocks_used),
            "message": self.message,
        }


@dataclass(frozen=True)
class ReturnLevelEstimate:
    period_r: float
    point: float
    lo: float
    hi: float
    method: str
    level: float = 0.95
    lower_open: bool = False
    upper_open: bool = False
    notes: Optional[str] = field(default=None, compare=False)

    @property
    def width(self) -> float:
        return self.hi - self.lo if math.isfinite(self.hi - self.lo) else math.inf
