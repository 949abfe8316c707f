"""
Base Estimator Class - Foundation for all block-maxima estimators.
Every estimator inherits the same logged maximum-likelihood procedure.
"""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from src.gev.core import GevParams
from src.inference.likelihood import Objective
from src.inference.optimize import feasible_start, invert_information, maximise, observed_information
from src.inference.types import BlockMaximaSet, EstimatorTag, FitOptions, FitResult
from src.utils.errors import InsufficientDataError
from src.utils.logger import ActionType, log_experiment

MIN_BLOCKS = 2


class BaseEstimator(ABC):
    """
    Abstract base class for the GEV estimators.
    Subclasses choose which blocks enter the fit and which objective is maximised.
    """

    def __init__(self, name: str, tag: EstimatorTag, options: Optional[FitOptions] = None):
        """
        Initialize the estimator.

        Args:
            name (str): Component name used in the experiment log.
            tag (EstimatorTag): Estimator identifier reported in FitResult.
            options (FitOptions): Search settings; defaults when omitted.
        """
        self.name = name
        self.tag = tag
        self.options = options or FitOptions()

    def select_blocks(self, data: BlockMaximaSet) -> BlockMaximaSet:
        """Blocks entering the likelihood (all of them unless overridden)."""
        return data

    @abstractmethod
    def objective(self, data: BlockMaximaSet) -> Objective:
        """Return the log-likelihood over (mu, sigma, xi) for already-selected blocks."""
        pass

    def get_action_type(self) -> ActionType:
        return ActionType.FIT

    def prepare(self, data: BlockMaximaSet) -> BlockMaximaSet:
        """
        Apply block selection and check enough blocks remain.

        Raises:
            InsufficientDataError: Fewer than two blocks survive selection.
        """
        selected = self.select_blocks(data)
        if selected.n_blocks < MIN_BLOCKS:
            raise InsufficientDataError(selected.n_blocks, MIN_BLOCKS, reason=f"estimator {self.tag.value}")
        return selected

    def fit(self, data: BlockMaximaSet) -> FitResult:
        """
        Maximise the estimator's objective and attach observed-information
        standard errors. Non-convergence is reported, not raised.

        Returns:
            FitResult: Parameters, log-likelihood, covariance and status.
        """
        selected = self.prepare(data)
        loglik = self.objective(selected)
        start = feasible_start(loglik, selected.maxima, self.options)
        optimum = maximise(loglik, start, self.options)

        message = optimum.message
        converged = optimum.success
        try:
            params = GevParams.from_array(optimum.theta)
        except ValueError:
            params = GevParams.from_array(start)
            converged = False
            message = "optimiser left the parameter space"

        if converged:
            info = observed_information(loglik, params.as_array(), self.options.hessian_rel_step)
            vcov, invertible = invert_information(info)
            if not invertible:
                converged = False
                message = "observed information is not positive definite"
        else:
            vcov = np.full((3, 3), np.nan)

        result = FitResult(
            params=params,
            loglik=optimum.loglik,
            se=np.sqrt(np.diag(vcov)),
            vcov=vcov,
            converged=converged,
            n_blocks_used=selected.n_blocks,
            estimator=self.tag,
            message=message,
            n_evaluations=optimum.n_evaluations,
        )

        if self.options.record:
            log_experiment(
                component=self.name,
                estimator=self.tag.value,
                action=self.get_action_type(),
                details={
                    "input_summary": f"{data.n_blocks} blocks, {selected.n_blocks} used",
                    "output_summary": {
                        "params": [params.mu, params.sigma, params.xi],
                        "loglik": optimum.loglik,
                        "message": message,
                    },
                },
                status="SUCCESS" if converged else "FAILURE",
            )
        return result

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(tag={self.tag.value})>"
