# Estimators Package
from typing import Optional, Union

from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions, FitResult

from .base import BaseEstimator
from .adjust import AdjustEstimator
from .standard import DiscardEstimator, NaiveEstimator
from .weighted import WeightedEstimator

EstimatorLike = Union[BaseEstimator, EstimatorTag, str]


def get_estimator(estimator: EstimatorLike, options: Optional[FitOptions] = None) -> BaseEstimator:
    """Resolve a tag (or pass through an instance) to an estimator object."""
    if isinstance(estimator, BaseEstimator):
        return estimator
    tag = EstimatorTag(estimator)
    if tag is EstimatorTag.ADJUST:
        return AdjustEstimator(options)
    if tag in (EstimatorTag.NAIVE, EstimatorTag.FULL):
        return NaiveEstimator(options, tag=tag)
    if tag is EstimatorTag.DISCARD:
        return DiscardEstimator(options)
    return WeightedEstimator(tag, options)


def fit(data: BlockMaximaSet, estimator: EstimatorLike, options: Optional[FitOptions] = None) -> FitResult:
    """Fit one estimator to a block-maxima set."""
    return get_estimator(estimator, options).fit(data)


__all__ = [
    "EstimatorLike",
    "BaseEstimator",
    "AdjustEstimator",
    "NaiveEstimator",
    "DiscardEstimator",
    "WeightedEstimator",
    "get_estimator",
    "fit",
]
