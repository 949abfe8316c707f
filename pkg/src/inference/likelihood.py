"""
Log-likelihoods of the adjusted, unweighted and weighted GEV models.

The `*_objective` builders return closures over a fixed data set taking a
parameter vector (mu, sigma, xi); they are what the estimators optimise.
"""

from typing import Callable

import numpy as np

from src.gev.core import GevParams, adjust_arrays, gev_logpdf_arrays
from src.inference.types import BlockMaximaSet, EstimatorTag

Objective = Callable[[np.ndarray], float]


def _total(logdens: np.ndarray) -> float:
    total = float(np.sum(logdens))
    return total if not np.isnan(total) else -np.inf


def adjusted_objective(data: BlockMaximaSet) -> Objective:
    maxima = data.maxima
    ratios = data.ratios

    def loglik(theta: np.ndarray) -> float:
        mu, sigma, xi = theta
        if not sigma > 0:
            return -np.inf
        mu_i, sigma_i = adjust_arrays(mu, sigma, xi, ratios)
        return _total(gev_logpdf_arrays(maxima, mu_i, sigma_i, xi))

    return loglik


def unweighted_objective(data: BlockMaximaSet) -> Objective:
    maxima = data.maxima

    def loglik(theta: np.ndarray) -> float:
        mu, sigma, xi = theta
        if not sigma > 0:
            return -np.inf
        return _total(gev_logpdf_arrays(maxima, mu, sigma, xi))

    return loglik


def empirical_cdf_at_maxima(maxima: np.ndarray) -> np.ndarray:
    """F(m_i) = #{j : m_j <= m_i} / b, so the largest maximum maps to 1."""
    ordered = np.sort(maxima)
    return np.searchsorted(ordered, maxima, side="right") / maxima.size


def block_weights(data: BlockMaximaSet, scheme: EstimatorTag | str) -> np.ndarray:
    scheme = EstimatorTag(scheme)
    if scheme is EstimatorTag.WEIGHT1:
        return data.ratios.astype(float)
    if scheme is EstimatorTag.WEIGHT2:
        missing = (data.block_n_full - data.n_obs).astype(float)
        return empirical_cdf_at_maxima(data.maxima) ** missing
    raise ValueError(f"unknown weighting scheme: {scheme.value!r}")


def weighted_objective(data: BlockMaximaSet, weights: np.ndarray) -> Objective:
    active = weights > 0
    maxima = data.maxima[active]
    w = weights[active]

    def loglik(theta: np.ndarray) -> float:
        mu, sigma, xi = theta
        if not sigma > 0:
            return -np.inf
        return _total(w * gev_logpdf_arrays(maxima, mu, sigma, xi))

    return loglik


def loglik_adjusted(data: BlockMaximaSet, p: GevParams) -> float:
    """Sum of block log-densities under the missingness-adjusted parameters."""
    return adjusted_objective(data)(p.as_array())


def loglik_naive(data: BlockMaximaSet, p: GevParams) -> float:
    return unweighted_objective(data)(p.as_array())


def loglik_weighted(data: BlockMaximaSet, p: GevParams, scheme: EstimatorTag | str) -> float:
    return weighted_objective(data, block_weights(data, scheme))(p.as_array())
