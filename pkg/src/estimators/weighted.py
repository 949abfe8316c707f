"""
Weighted Estimators - down-weight maxima of incomplete blocks.
"""

from typing import Optional

from src.estimators.base import BaseEstimator
from src.inference.likelihood import Objective, block_weights, weighted_objective
from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions


class WeightedEstimator(BaseEstimator):
    """
    Weighted GEV likelihood sum_i w_i log g(m_i).

    weight1: w_i = n_i / n
    weight2: w_i = F(m_i) ** (n - n_i), F the empirical CDF of the maxima
    Weights depend on the data only and are fixed before the search.
    """

    def __init__(self, scheme: EstimatorTag, options: Optional[FitOptions] = None):
        scheme = EstimatorTag(scheme)
        if scheme not in (EstimatorTag.WEIGHT1, EstimatorTag.WEIGHT2):
            raise ValueError(f"unknown weighting scheme: {scheme.value!r}")
        super().__init__(name=f"WeightedEstimator[{scheme.value}]", tag=scheme, options=options)

    def objective(self, data: BlockMaximaSet) -> Objective:
        return weighted_objective(data, block_weights(data, self.tag))
