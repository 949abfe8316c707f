"""
Unadjusted estimators: ignore missingness, or drop badly affected blocks first.
"""

from typing import Optional

from src.estimators.base import BaseEstimator
from src.inference.likelihood import Objective, unweighted_objective
from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions


class NaiveEstimator(BaseEstimator):
    """
    Ordinary GEV likelihood on the observed maxima.
    Tagged `full` when fitted to maxima computed before any masking.
    """

    def __init__(self, options: Optional[FitOptions] = None, tag: EstimatorTag = EstimatorTag.NAIVE):
        if tag not in (EstimatorTag.NAIVE, EstimatorTag.FULL):
            raise ValueError(f"NaiveEstimator cannot carry tag {tag.value!r}")
        name = "FullDataEstimator" if tag is EstimatorTag.FULL else "NaiveEstimator"
        super().__init__(name=name, tag=tag, options=options)

    def objective(self, data: BlockMaximaSet) -> Objective:
        return unweighted_objective(data)


class DiscardEstimator(NaiveEstimator):
    """Ordinary likelihood after removing blocks missing more than `discard_threshold`."""

    def __init__(self, options: Optional[FitOptions] = None):
        super().__init__(options=options)
        self.name = "DiscardEstimator"
        self.tag = EstimatorTag.DISCARD

    def select_blocks(self, data: BlockMaximaSet) -> BlockMaximaSet:
        return data.retain(1.0 - self.options.discard_threshold)
