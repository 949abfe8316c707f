# Simulation Package
from .distributions import DistributionTag, RawDistribution, simulate_raw, true_return_level
from .missingness import MissingnessMode, impose_missingness, mask_blocks
from .records import REPLICATE_COLUMNS, ReplicateRecord
from .rng import StreamPurpose, replicate_generator
from .summary import (
    Estimate,
    EstimatorSummary,
    ReturnLevelHistogram,
    SimulationSummary,
    Statistic,
    mcse,
    rl_histogram_data,
    statistic_value,
)
from .study import FULL_SCALE_REPS, SimulationConfig, StudyResult, run_replicate, run_study

__all__ = [
    "DistributionTag",
    "RawDistribution",
    "simulate_raw",
    "true_return_level",
    "MissingnessMode",
    "impose_missingness",
    "mask_blocks",
    "REPLICATE_COLUMNS",
    "ReplicateRecord",
    "StreamPurpose",
    "replicate_generator",
    "Estimate",
    "EstimatorSummary",
    "ReturnLevelHistogram",
    "SimulationSummary",
    "Statistic",
    "mcse",
    "rl_histogram_data",
    "statistic_value",
    "FULL_SCALE_REPS",
    "SimulationConfig",
    "StudyResult",
    "run_replicate",
    "run_study",
]
