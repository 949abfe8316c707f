"""
Plot data for checking a fitted (possibly missingness-adjusted) GEV model.

Observed maxima of incomplete blocks are first standardised to the full-block
scale by matching quantiles, after which the usual PP, QQ, return-level and
density displays apply. Everything here returns arrays; rendering is left to
whatever consumes the CSV files.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from src.diagnostics.order_stats import order_statistic_bands, plotting_positions
from src.gev.core import adjust_arrays, gev_cdf_arrays, gev_pdf, gev_quantile_arrays, return_level
from src.inference.profile import ProfileOptions, ReturnLevelProfile
from src.inference.types import BlockMaximaSet, FitOptions, FitResult
from src.estimators import get_estimator

CLAMP_EPS = 1e-12
RETURN_PERIOD_TICKS = (2, 5, 10, 20, 50, 100, 200, 500, 1000)
DEFAULT_R_GRID = tuple(float(r) for r in np.geomspace(1.1, 1000.0, 30))
DENSITY_GRID_SIZE = 512

# coarse profile walk, one interval per grid point
PLOT_PROFILE_OPTIONS = ProfileOptions(grid_size=41)


@dataclass(frozen=True)
class AdjustedMaxima:
    values: np.ndarray
    clamped: np.ndarray


@dataclass(frozen=True)
class PpPlotData:
    expected: np.ndarray
    observed: np.ndarray
    lo: np.ndarray
    hi: np.ndarray


@dataclass(frozen=True)
class QqPlotData:
    model_quantile: np.ndarray
    adjusted_maximum: np.ndarray
    lo: np.ndarray
    hi: np.ndarray


@dataclass(frozen=True)
class ReturnLevelPlotData:
    r: np.ndarray
    x_axis: np.ndarray
    z: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    interval_failed: np.ndarray
    empirical_r: np.ndarray
    empirical_x: np.ndarray
    empirical_z: np.ndarray
    ticks: tuple[tuple[float, float], ...] = field(default=())


@dataclass(frozen=True)
class DensityPlotData:
    bin_edges: np.ndarray
    heights: np.ndarray
    grid_z: np.ndarray
    pdf: np.ndarray


def return_period_axis(r) -> np.ndarray:
    """Abscissa -log10(-log(1 - 1/r)) of the return-level plot."""
    r = np.asarray(r, dtype=float)
    return -np.log10(-np.log1p(-1.0 / r))


def model_probabilities(data: BlockMaximaSet, fit: FitResult) -> np.ndarray:
    """Fitted probability of each observed maximum under its block-specific law, in block order."""
    p = fit.params
    mu_i, sigma_i = adjust_arrays(p.mu, p.sigma, p.xi, data.ratios)
    complete = data.n_obs == data.block_n_full
    mu_i = np.where(complete, p.mu, mu_i)
    sigma_i = np.where(complete, p.sigma, sigma_i)
    return gev_cdf_arrays(data.maxima, mu_i, sigma_i, p.xi)


def adjusted_block_maxima(data: BlockMaximaSet, fit: FitResult) -> AdjustedMaxima:
    """
    Full-block equivalents of the observed maxima: the full-block quantile
    at each block's model probability. Probabilities at 0 or 1 are clamped
    to [1e-12, 1 - 1e-12] and flagged.
    """
    p = fit.params
    probs = model_probabilities(data, fit)
    clamped = (probs < CLAMP_EPS) | (probs > 1.0 - CLAMP_EPS)
    probs = np.clip(probs, CLAMP_EPS, 1.0 - CLAMP_EPS)
    values = gev_quantile_arrays(-np.log(probs), p.mu, p.sigma, p.xi)
    complete = (data.n_obs == data.block_n_full) & ~clamped
    values = np.where(complete, data.maxima, values)
    return AdjustedMaxima(values=values, clamped=clamped)


def pp_plot_data(data: BlockMaximaSet, fit: FitResult, level: float = 0.95) -> PpPlotData:
    b = data.n_blocks
    lo, hi = order_statistic_bands(b, level)
    return PpPlotData(
        expected=plotting_positions(b),
        observed=np.sort(model_probabilities(data, fit)),
        lo=lo,
        hi=hi,
    )


def qq_plot_data(data: BlockMaximaSet, fit: FitResult, level: float = 0.95) -> QqPlotData:
    p = fit.params
    b = data.n_blocks
    lo, hi = order_statistic_bands(b, level)

    def full_quantile(probs: np.ndarray) -> np.ndarray:
        return gev_quantile_arrays(-np.log(probs), p.mu, p.sigma, p.xi)

    return QqPlotData(
        model_quantile=full_quantile(plotting_positions(b)),
        adjusted_maximum=np.sort(adjusted_block_maxima(data, fit).values),
        lo=full_quantile(lo),
        hi=full_quantile(hi),
    )


def return_level_plot_data(
    data: BlockMaximaSet,
    fit: FitResult,
    r_grid: Optional[Sequence[float]] = None,
    level: float = 0.95,
    options: Optional[FitOptions] = None,
    profile_options: Optional[ProfileOptions] = None,
    intervals: bool = True,
) -> ReturnLevelPlotData:
    """
    Fitted return-level curve with profile intervals, and the adjusted
    maxima at plotting periods 1 / (1 - i / (b + 1)).

    A grid point whose interval cannot be located keeps its curve value,
    gets NaN bounds and is flagged in `interval_failed`.
    """
    r = np.sort(np.asarray(r_grid if r_grid is not None else DEFAULT_R_GRID, dtype=float))
    z = np.asarray(return_level(r, fit.params), dtype=float)
    lo = np.full(r.shape, np.nan)
    hi = np.full(r.shape, np.nan)
    failed = np.zeros(r.shape, dtype=bool)

    if intervals:
        est = get_estimator(fit.estimator, options)
        loglik = est.objective(est.prepare(data))
        for k, period in enumerate(r):
            try:
                profile = ReturnLevelProfile(loglik, fit, period, profile_options or PLOT_PROFILE_OPTIONS)
                estimate = profile.interval(level)
            except (ValueError, ArithmeticError, RuntimeError):
                failed[k] = True
                continue
            lo[k], hi[k] = estimate.lo, estimate.hi
            failed[k] = estimate.upper_open or estimate.lower_open

    b = data.n_blocks
    empirical_r = 1.0 / (1.0 - plotting_positions(b))
    empirical_z = np.sort(adjusted_block_maxima(data, fit).values)
    ticks = tuple((float(t), float(return_period_axis(t))) for t in RETURN_PERIOD_TICKS)
    return ReturnLevelPlotData(
        r=r,
        x_axis=return_period_axis(r),
        z=z,
        lo=lo,
        hi=hi,
        interval_failed=failed,
        empirical_r=empirical_r,
        empirical_x=return_period_axis(empirical_r),
        empirical_z=empirical_z,
        ticks=ticks,
    )


def density_plot_data(data: BlockMaximaSet, fit: FitResult, n_bins: int = 20) -> DensityPlotData:
    """
    Histogram of the adjusted maxima and the fitted density on a grid that
    spans the data and the mode of the fit.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be positive")
    values = adjusted_block_maxima(data, fit).values
    heights, edges = np.histogram(values, bins=n_bins, density=True)
    mode = gev_mode(fit)
    low, high = min(float(values.min()), mode), max(float(values.max()), mode)
    pad = 0.1 * (high - low) if high > low else 0.1 * max(1.0, abs(low))
    grid = np.linspace(low - pad, high + pad, DENSITY_GRID_SIZE)
    return DensityPlotData(bin_edges=edges, heights=heights, grid_z=grid, pdf=gev_pdf(grid, fit.params))


def gev_mode(fit: FitResult) -> float:
    p = fit.params
    if p.is_gumbel:
        return p.mu
    if p.xi <= -1.0:
        return p.support()[1]
    return p.mu + p.sigma * ((1.0 + p.xi) ** (-p.xi) - 1.0) / p.xi
