"""
Adjust Estimator - block-specific location and scale from the non-missing counts.
"""

from typing import Optional

from src.estimators.base import BaseEstimator
from src.inference.likelihood import Objective, adjusted_objective
from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions


class AdjustEstimator(BaseEstimator):
    """
    Maximum likelihood under G(z; mu, sigma, xi) ** (n_i / n) for block i.
    Still three parameters; return levels come from the full-block law.
    """

    def __init__(self, options: Optional[FitOptions] = None):
        super().__init__(name="AdjustEstimator", tag=EstimatorTag.ADJUST, options=options)

    def objective(self, data: BlockMaximaSet) -> Objective:
        return adjusted_objective(data)
