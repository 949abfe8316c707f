"""
Monte Carlo comparison of the block-maxima estimators.

One replicate: simulate b blocks of n raw values, take the complete-data
maxima, mask each block at random, then fit every requested estimator on the
masked maxima and the `full` estimator on the complete ones. All estimators
of a replicate see the same masked data.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from src.estimators import get_estimator
from src.gev.core import return_level
from src.inference.profile import ReturnLevelProfile, profile_covers
from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions, FitResult
from src.simulation.distributions import RawDistribution, simulate_raw, true_return_level
from src.simulation.missingness import MissingnessMode, mask_blocks
from src.simulation.records import ReplicateRecord
from src.simulation.rng import StreamPurpose, replicate_generator
from src.simulation.summary import SimulationSummary, summarise_estimator
from src.utils.config import load_settings
from src.utils.errors import ConfigError, InsufficientDataError
from src.utils.logger import ActionType, log_experiment

FULL_SCALE_REPS = 10_000
DEFAULT_ESTIMATORS = (
    EstimatorTag.ADJUST,
    EstimatorTag.NAIVE,
    EstimatorTag.DISCARD,
    EstimatorTag.WEIGHT1,
    EstimatorTag.WEIGHT2,
)


@dataclass(frozen=True)
class SimulationConfig:
    dist: RawDistribution = field(default_factory=lambda: RawDistribution("exponential"))
    b: int = 50
    n: int = 90
    miss_upper: float = 0.2
    reps: int = 1000
    seed: int = field(default_factory=lambda: load_settings().seed)
    estimators: tuple[EstimatorTag, ...] = DEFAULT_ESTIMATORS
    rl_period: float = 100.0
    ci_level: float = 0.95
    missingness: MissingnessMode = MissingnessMode.UNIFORM
    discard_threshold: float = 0.10
    coverage: bool = True

    def __post_init__(self):
        if not isinstance(self.dist, RawDistribution):
            raise ConfigError("dist must be a RawDistribution")
        for name in ("b", "n", "reps"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.b < 2:
            raise ConfigError("a study needs at least 2 blocks")
        if not 0.0 <= self.miss_upper < 1.0:
            raise ConfigError(f"miss_upper must lie in [0, 1), got {self.miss_upper}")
        if not self.rl_period > 1:
            raise ConfigError("rl_period must exceed 1")
        if not 0.0 < self.ci_level < 1.0:
            raise ConfigError("ci_level must lie in (0, 1)")
        if not 0.0 <= self.discard_threshold < 1.0:
            raise ConfigError("discard_threshold must lie in [0, 1)")
        try:
            tags = tuple(EstimatorTag(tag) for tag in self.estimators)
            mode = MissingnessMode(self.missingness)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        # `full` is always fitted as the reference
        tags = tuple(dict.fromkeys(tag for tag in tags if tag is not EstimatorTag.FULL))
        if not tags:
            raise ConfigError("at least one estimator besides full is required")
        object.__setattr__(self, "estimators", tags)
        object.__setattr__(self, "missingness", mode)
        object.__setattr__(self, "seed", int(self.seed))

    @classmethod
    def from_dict(cls, raw: dict) -> "SimulationConfig":
        """
        Build a config from its JSON form.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        if not isinstance(raw, dict):
            raise ConfigError("simulation config must be a JSON object")
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown simulation config key(s): {', '.join(unknown)}")
        values = dict(raw)
        dist = values.get("dist", "exponential")
        try:
            if isinstance(dist, str):
                values["dist"] = RawDistribution(dist)
            elif isinstance(dist, dict):
                extra = sorted(set(dist) - {"tag", "maxar_theta"})
                if extra:
                    raise ConfigError(f"unknown dist key(s): {', '.join(extra)}")
                values["dist"] = RawDistribution(dist.get("tag"), dist.get("maxar_theta"))
            else:
                raise ConfigError("dist must be a tag or an object with 'tag'")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if "estimators" in values:
            values["estimators"] = tuple(values["estimators"])
        return cls(**values)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dist"] = {"tag": self.dist.tag.value, "maxar_theta": self.dist.maxar_theta}
        out["estimators"] = [tag.value for tag in self.estimators]
        out["missingness"] = self.missingness.value
        return out

    def fit_options(self) -> FitOptions:
        return FitOptions(discard_threshold=self.discard_threshold, record=False)


@dataclass
class StudyResult:
    summary: SimulationSummary
    records: list[ReplicateRecord]


def simulate_replicate_data(config: SimulationConfig, replicate: int) -> tuple[BlockMaximaSet, BlockMaximaSet]:
    """(complete-data maxima, masked maxima) of one replicate."""
    data_rng = replicate_generator(config.seed, replicate, StreamPurpose.DATA)
    raw = simulate_raw(config.dist, config.b * config.n, data_rng).reshape(config.b, config.n)
    full = BlockMaximaSet.from_arrays(raw.max(axis=1), np.full(config.b, config.n), config.n)
    miss_rng = replicate_generator(config.seed, replicate, StreamPurpose.MISSINGNESS)
    maxima, n_obs = mask_blocks(raw, config.miss_upper, miss_rng, config.missingness)
    return full, BlockMaximaSet.from_arrays(maxima, n_obs, config.n)


def _covers(data: BlockMaximaSet, tag: EstimatorTag, fit: FitResult, config: SimulationConfig, z_true: float):
    est = get_estimator(tag, config.fit_options())
    try:
        profile = ReturnLevelProfile(est.objective(est.prepare(data)), fit, config.rl_period)
        return profile_covers(profile, z_true, config.ci_level)
    except (ValueError, ArithmeticError):
        return None


def _fit_one(data: BlockMaximaSet, tag: EstimatorTag, options: FitOptions) -> tuple[Optional[FitResult], str]:
    try:
        result = get_estimator(tag, options).fit(data)
    except InsufficientDataError:
        return None, "insufficient_data"
    if not result.converged:
        return result, "not_converged"
    return result, ""


def run_replicate(config: SimulationConfig, replicate: int) -> list[ReplicateRecord]:
    """Records for `full` followed by each configured estimator."""
    z_true = true_return_level(config.dist, config.n, config.rl_period)
    full_data, masked = simulate_replicate_data(config, replicate)
    options = config.fit_options()

    records = []
    full_fit, full_reason = _fit_one(full_data, EstimatorTag.FULL, options)
    for tag in (EstimatorTag.FULL,) + config.estimators:
        data = full_data if tag is EstimatorTag.FULL else masked
        fit, reason = (full_fit, full_reason) if tag is EstimatorTag.FULL else _fit_one(data, tag, options)
        if fit is None or reason:
            records.append(
                ReplicateRecord(
                    replicate=replicate,
                    estimator=tag.value,
                    converged=False,
                    n_blocks_used=fit.n_blocks_used if fit is not None else 0,
                    failure_reason=reason,
                )
            )
            continue
        p = fit.params
        rl = float(return_level(config.rl_period, p))
        diffs = (math.nan,) * 3
        if tag is not EstimatorTag.FULL and not full_reason:
            diffs = tuple(float(v) for v in p.as_array() - full_fit.params.as_array())
        records.append(
            ReplicateRecord(
                replicate=replicate,
                estimator=tag.value,
                converged=True,
                n_blocks_used=fit.n_blocks_used,
                mu=p.mu,
                sigma=p.sigma,
                xi=p.xi,
                mu_diff=diffs[0],
                sigma_diff=diffs[1],
                xi_diff=diffs[2],
                rl=rl,
                rl_error=rl - z_true,
                covered=_covers(data, tag, fit, config, z_true) if config.coverage else None,
            )
        )
    return records


def _run_chunk(config: SimulationConfig, replicates: Sequence[int]) -> list[ReplicateRecord]:
    out = []
    for replicate in replicates:
        out.extend(run_replicate(config, replicate))
    return out


def summarise(config: SimulationConfig, records: Sequence[ReplicateRecord]) -> SimulationSummary:
    tags = (EstimatorTag.FULL,) + config.estimators
    return SimulationSummary(
        reference={
            "true_rl": true_return_level(config.dist, config.n, config.rl_period),
            "rl_period": config.rl_period,
            "iid_marginal_assumption": config.dist.iid_marginal_assumption,
        },
        estimators={tag.value: summarise_estimator(records, tag.value) for tag in tags},
        config=config.to_dict(),
    )


def run_study(config: SimulationConfig, threads: int = 1) -> StudyResult:
    """
    Run all replicates and aggregate. Output depends only on the config;
    `threads` changes wall time, not results.
    """
    if threads < 1:
        raise ConfigError("threads must be >= 1")
    indices = list(range(config.reps))
    if threads == 1:
        records = _run_chunk(config, indices)
    else:
        chunks = [indices[k::threads] for k in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = [rec for chunk in pool.map(_run_chunk, [config] * threads, chunks) for rec in chunk]
    order = {tag.value: k for k, tag in enumerate((EstimatorTag.FULL,) + config.estimators)}
    records.sort(key=lambda rec: (rec.replicate, order[rec.estimator]))
    summary = summarise(config, records)

    failures = {tag: s.failure_count for tag, s in summary.estimators.items()}
    log_experiment(
        component="SimulationStudy",
        estimator=",".join(order),
        action=ActionType.SIMULATION,
        details={
            "input_summary": config.to_dict(),
            "output_summary": {"replicates": config.reps, "failures": failures},
        },
        status="PARTIAL" if any(failures.values()) else "SUCCESS",
    )
    return StudyResult(summary=summary, records=records)
