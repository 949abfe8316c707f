# Inference Package
# Profile and delta-method return levels live in src.inference.profile,
# which depends on src.estimators and is therefore not imported here.
from .types import (
    BlockMaximaSet,
    BlockRecord,
    EstimatorTag,
    FitOptions,
    FitResult,
    ReturnLevelEstimate,
)
from .likelihood import (
    block_weights,
    empirical_cdf_at_maxima,
    loglik_adjusted,
    loglik_naive,
    loglik_weighted,
)

__all__ = [
    "BlockMaximaSet",
    "BlockRecord",
    "EstimatorTag",
    "FitOptions",
    "FitResult",
    "ReturnLevelEstimate",
    "block_weights",
    "empirical_cdf_at_maxima",
    "loglik_adjusted",
    "loglik_naive",
    "loglik_weighted",
]
