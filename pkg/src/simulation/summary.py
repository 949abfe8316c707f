"""
Summary statistics of the simulation study and their Monte Carlo standard errors.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from src.simulation.records import ReplicateRecord
from src.utils.errors import InsufficientDataError

MIN_REPLICATES = 30
BOOTSTRAP_RESAMPLES = 1000
BOOTSTRAP_SEED = 0xB007
_BOOTSTRAP_CHUNK = 100


class Statistic(str, Enum):
    BIAS = "bias"
    MEDIAN_BIAS = "median_bias"
    SD = "sd"
    IQR = "iqr"
    RMSE = "rmse"
    MAE = "mae"
    COVERAGE = "coverage"


ERROR_STATISTICS = (
    Statistic.BIAS,
    Statistic.MEDIAN_BIAS,
    Statistic.SD,
    Statistic.IQR,
    Statistic.RMSE,
    Statistic.MAE,
)


def _iqr(values: np.ndarray, axis=None) -> np.ndarray:
    q75, q25 = np.percentile(values, [75, 25], axis=axis)
    return q75 - q25


def statistic_value(statistic: Statistic, values) -> float:
    """
    Statistic of a replicate stream. Errors (estimate - target) for the
    error statistics, 0/1 containment indicators for coverage.
    """
    statistic = Statistic(statistic)
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return math.nan
    if statistic is Statistic.BIAS:
        return float(np.mean(values))
    if statistic is Statistic.MEDIAN_BIAS:
        return float(np.median(values))
    if statistic is Statistic.SD:
        return float(np.std(values, ddof=1)) if values.size > 1 else math.nan
    if statistic is Statistic.IQR:
        return float(_iqr(values))
    if statistic is Statistic.RMSE:
        return math.sqrt(float(np.mean(values ** 2)))
    if statistic is Statistic.MAE:
        return float(np.mean(np.abs(values)))
    return float(np.mean(values))


def _bootstrap_se(values: np.ndarray, statistic: Statistic) -> float:
    rng = np.random.Generator(np.random.Philox(BOOTSTRAP_SEED))
    size = values.size
    estimates = []
    for start in range(0, BOOTSTRAP_RESAMPLES, _BOOTSTRAP_CHUNK):
        rows = min(_BOOTSTRAP_CHUNK, BOOTSTRAP_RESAMPLES - start)
        sample = values[rng.integers(0, size, size=(rows, size))]
        if statistic is Statistic.MEDIAN_BIAS:
            estimates.append(np.median(sample, axis=1))
        else:
            estimates.append(_iqr(sample, axis=1))
    return float(np.std(np.concatenate(estimates), ddof=1))


def mcse(statistic: Statistic, values) -> float:
    """
    Monte Carlo standard error of `statistic` over a replicate stream.

    Raises:
        InsufficientDataError: With fewer than 30 replicates.
    """
    statistic = Statistic(statistic)
    values = np.asarray(values, dtype=float)
    size = values.size
    if size < MIN_REPLICATES:
        raise InsufficientDataError(size, MIN_REPLICATES, reason=f"MCSE of {statistic.value}", unit="replicate(s)")
    if statistic is Statistic.BIAS:
        return float(np.std(values, ddof=1)) / math.sqrt(size)
    if statistic is Statistic.SD:
        return float(np.std(values, ddof=1)) / math.sqrt(2.0 * (size - 1))
    if statistic is Statistic.COVERAGE:
        p = float(np.mean(values))
        return math.sqrt(max(p * (1.0 - p), 0.0) / size)
    if statistic is Statistic.MAE:
        return float(np.std(np.abs(values), ddof=1)) / math.sqrt(size)
    if statistic is Statistic.RMSE:
        rmse = statistic_value(Statistic.RMSE, values)
        if rmse == 0.0:
            return 0.0
        # delta rule on sqrt(mean(e^2))
        return float(np.std(values ** 2, ddof=1)) / math.sqrt(size) / (2.0 * rmse)
    return _bootstrap_se(values, statistic)


@dataclass(frozen=True)
class Estimate:
    value: float
    mcse: float

    def to_dict(self) -> dict:
        return {"value": self.value, "mcse": self.mcse}


def summarise_stream(values, statistics: Sequence[Statistic]) -> dict[str, Estimate]:
    values = np.asarray(values, dtype=float)
    out = {}
    for statistic in statistics:
        error = mcse(statistic, values) if values.size >= MIN_REPLICATES else math.nan
        out[statistic.value] = Estimate(statistic_value(statistic, values), error)
    return out


@dataclass
class EstimatorSummary:
    estimator: str
    failure_count: int
    n_used: int
    param_differences: dict[str, dict[str, Estimate]] = field(default_factory=dict)
    return_level: dict[str, Estimate] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "failure_count": self.failure_count,
            "n_used": self.n_used,
            "param_differences": {
                name: {stat: est.to_dict() for stat, est in stats.items()}
                for name, stats in self.param_differences.items()
            },
            "return_level": {stat: est.to_dict() for stat, est in self.return_level.items()},
        }


@dataclass
class SimulationSummary:
    reference: dict
    estimators: dict[str, EstimatorSummary]
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "reference": self.reference,
            "estimators": {tag: summary.to_dict() for tag, summary in self.estimators.items()},
        }


def summarise_estimator(records: Iterable[ReplicateRecord], estimator: str) -> EstimatorSummary:
    """
    Aggregate one estimator's records. Failed replicates are counted and
    left out; parameter differences additionally need the paired full fit.
    """
    own = [rec for rec in records if rec.estimator == estimator]
    ok = [rec for rec in own if rec.converged]
    summary = EstimatorSummary(estimator=estimator, failure_count=len(own) - len(ok), n_used=len(ok))

    if estimator != "full":
        for name in ("mu", "sigma", "xi"):
            diffs = np.array([getattr(rec, f"{name}_diff") for rec in ok])
            diffs = diffs[np.isfinite(diffs)]
            summary.param_differences[name] = summarise_stream(diffs, ERROR_STATISTICS)

    errors = np.array([rec.rl_error for rec in ok])
    summary.return_level = summarise_stream(errors[np.isfinite(errors)], ERROR_STATISTICS)
    covered = np.array([float(rec.covered) for rec in ok if rec.covered is not None])
    summary.return_level.update(summarise_stream(covered, (Statistic.COVERAGE,)))
    return summary


@dataclass(frozen=True)
class ReturnLevelHistogram:
    estimator: str
    bin_edges: np.ndarray
    mass: np.ndarray
    mean: float
    median: float
    true_rl: float


def rl_histogram_data(
    records: Iterable[ReplicateRecord],
    estimator: str,
    true_rl: float,
    bins: int | str = "auto",
) -> ReturnLevelHistogram:
    """Histogram (bin mass summing to 1) of converged return-level estimates, with markers."""
    values = np.array([rec.rl for rec in records if rec.estimator == estimator and rec.converged], dtype=float)
    values = values[np.isfinite(values)]
    if values.size == 0:
        raise InsufficientDataError(0, 1, reason=f"no converged {estimator} fits", unit="replicate(s)")
    counts, edges = np.histogram(values, bins=bins)
    return ReturnLevelHistogram(
        estimator=estimator,
        bin_edges=edges,
        mass=counts / values.size,
        mean=float(np.mean(values)),
        median=float(np.median(values)),
        true_rl=float(true_rl),
    )
