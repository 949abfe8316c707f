import math

import numpy as np
import pytest
from scipy.stats import beta, genextreme

from conftest import gev_sample, make_fit
from src.diagnostics import (
    adjusted_block_maxima,
    beta_quantile,
    build_diagnostics,
    density_plot_data,
    model_probabilities,
    order_statistic_bands,
    plotting_positions,
    pp_plot_data,
    qq_plot_data,
    return_level_plot_data,
    return_period_axis,
)
from src.diagnostics.plots import gev_mode
from src.estimators import fit
from src.gev import GevParams, gev_quantile, return_level
from src.inference import BlockMaximaSet, FitOptions
from src.utils.errors import GevDomainError

QUIET = FitOptions(record=False)


# --- STATISTIQUES D'ORDRE ---

def test_beta_quantile_matches_scipy():
    assert beta_quantile(0.025, 2, 2) == pytest.approx(0.09430, abs=1e-4)
    for q, a, b in [(0.025, 1, 10), (0.975, 7, 3), (0.5, 30, 1)]:
        assert beta_quantile(q, a, b) == pytest.approx(beta.ppf(q, a, b), abs=1e-10)


def test_beta_quantile_domain():
    with pytest.raises(GevDomainError):
        beta_quantile(0.0, 2, 2)
    with pytest.raises(GevDomainError):
        beta_quantile(0.5, 0, 2)


def test_bands_for_three_blocks():
    lo, hi = order_statistic_bands(3)
    assert lo[1] == pytest.approx(0.09430, abs=1e-4)
    assert hi[1] == pytest.approx(0.90570, abs=1e-4)


def test_plotting_positions_and_band_ordering():
    assert plotting_positions(1).tolist() == [0.5]
    expected = plotting_positions(40)
    lo, hi = order_statistic_bands(40)
    assert np.all(lo < expected) and np.all(expected < hi)


# --- PROBABILITÉS ET MAXIMA AJUSTÉS ---

def test_model_probabilities_examples():
    p = GevParams(2.0, 1.5, 0.0)
    data = BlockMaximaSet.from_arrays([2.0, 2.0 - 1.5 * math.log(2)], [10, 5], 10)
    probs = model_probabilities(data, make_fit(p, 2))
    np.testing.assert_allclose(probs, [math.exp(-1), math.exp(-1)], atol=1e-15)


def test_model_probabilities_composition():
    p = GevParams(0.5, 1.2, 0.15)
    maxima = np.array([0.1, 1.4, 2.2, -0.3, 0.9])
    n_obs = np.array([20, 12, 17, 5, 20])
    data = BlockMaximaSet.from_arrays(maxima, n_obs, 20)
    rho = n_obs / 20
    expected = genextreme.cdf(maxima, -p.xi, loc=p.mu, scale=p.sigma) ** rho
    np.testing.assert_allclose(model_probabilities(data, make_fit(p, 5)), expected, atol=1e-12)


def test_adjusted_maxima_identity_and_gumbel_shift():
    p = GevParams(1.0, 2.0, 0.0)
    data = BlockMaximaSet.from_arrays([3.0, 3.0], [100, 40], 100)
    adjusted = adjusted_block_maxima(data, make_fit(p, 2))
    assert adjusted.values[0] == 3.0
    assert adjusted.values[1] == pytest.approx(3.0 - 2.0 * math.log(0.4), abs=1e-10)
    assert not adjusted.clamped.any()


def test_adjusted_maxima_monotone():
    p = GevParams(0.0, 1.0, -0.2)
    grid = np.linspace(-2, 4, 50)
    data = BlockMaximaSet.from_arrays(grid, np.full(50, 30), 60)
    values = adjusted_block_maxima(data, make_fit(p, 50)).values
    assert np.all(np.diff(values) > 0)


def test_adjusted_maxima_clamped_at_endpoint():
    p = GevParams(0.0, 1.0, -0.5)
    data = BlockMaximaSet.from_arrays([1.0, 2.5], [10, 5], 10)
    adjusted = adjusted_block_maxima(data, make_fit(p, 2))
    assert adjusted.clamped.tolist() == [False, True]
    assert np.all(np.isfinite(adjusted.values))


# --- PP / QQ ---

def test_pp_sorted_and_banded(masked_blocks):
    result = fit(masked_blocks, "adjust", QUIET)
    pp = pp_plot_data(masked_blocks, result)
    assert np.all(np.diff(pp.observed) >= 0)
    np.testing.assert_array_equal(pp.expected, plotting_positions(masked_blocks.n_blocks))


def test_qq_bands_are_quantiles_of_pp_bands(masked_blocks):
    result = fit(masked_blocks, "adjust", QUIET)
    pp = pp_plot_data(masked_blocks, result)
    qq = qq_plot_data(masked_blocks, result)
    np.testing.assert_allclose(qq.lo, gev_quantile(pp.lo, result.params), atol=1e-12)
    np.testing.assert_allclose(qq.hi, gev_quantile(pp.hi, result.params), atol=1e-12)


def test_qq_median_without_missingness():
    p = GevParams(0.0, 1.0, 0.1)
    data = BlockMaximaSet.from_arrays([2.0, -1.0, 0.5], [10, 10, 10], 10)
    qq = qq_plot_data(data, make_fit(p, 3))
    assert qq.adjusted_maximum[1] == 0.5


def test_qq_invariant_to_block_order(masked_blocks):
    result = fit(masked_blocks, "adjust", QUIET)
    order = np.random.default_rng(0).permutation(masked_blocks.n_blocks)
    shuffled = BlockMaximaSet.from_arrays(
        masked_blocks.maxima[order], masked_blocks.n_obs[order], masked_blocks.block_n_full[order]
    )
    a = qq_plot_data(masked_blocks, result)
    b = qq_plot_data(shuffled, result)
    np.testing.assert_array_equal(a.adjusted_maximum, b.adjusted_maximum)
    np.testing.assert_array_equal(a.lo, b.lo)


def test_classical_diagnostics_without_missingness():
    p = GevParams(1.0, 0.8, 0.1)
    maxima = gev_sample(p, 60, seed=8)
    data = BlockMaximaSet.from_arrays(maxima, np.full(60, 365), 365)
    bundle = build_diagnostics(data, make_fit(p, 60), r_grid=[2.0, 10.0, 100.0], options=QUIET, intervals=False)

    c = -p.xi
    positions = np.arange(1, 61) / 61
    lo = beta.ppf(0.025, np.arange(1, 61), 60 - np.arange(1, 61) + 1)
    np.testing.assert_allclose(bundle.adjusted_maxima, maxima, atol=1e-10)
    np.testing.assert_allclose(bundle.pp.observed, np.sort(genextreme.cdf(maxima, c, loc=p.mu, scale=p.sigma)), atol=1e-10)
    np.testing.assert_allclose(bundle.pp.lo, lo, atol=1e-10)
    np.testing.assert_allclose(bundle.qq.model_quantile, genextreme.ppf(positions, c, loc=p.mu, scale=p.sigma), atol=1e-10)
    np.testing.assert_allclose(bundle.qq.adjusted_maximum, np.sort(maxima), atol=1e-10)
    np.testing.assert_allclose(bundle.qq.lo, genextreme.ppf(lo, c, loc=p.mu, scale=p.sigma), atol=1e-10)
    np.testing.assert_allclose(
        bundle.return_levels.z, genextreme.ppf(1 - 1 / np.array([2.0, 10.0, 100.0]), c, loc=p.mu, scale=p.sigma), atol=1e-10
    )
    np.testing.assert_allclose(bundle.return_levels.empirical_z, np.sort(maxima), atol=1e-10)


# --- NIVEAUX DE RETOUR ---

def test_return_period_axis_value():
    assert return_period_axis(2.0) == pytest.approx(-math.log10(math.log(2)), abs=1e-12)
    assert return_period_axis(2.0) == pytest.approx(0.159175, abs=1e-6)


def test_gumbel_curve_is_linear_in_reduced_variate():
    p = GevParams(3.0, 1.7, 0.0)
    data = BlockMaximaSet.from_arrays([3.0, 4.0, 5.0], [10, 10, 10], 10)
    rl = return_level_plot_data(data, make_fit(p, 3), r_grid=[5.0, 50.0, 500.0], intervals=False)
    x = -np.log(-np.log1p(-1 / rl.r))
    slopes = np.diff(rl.z) / np.diff(x)
    assert slopes[0] == pytest.approx(slopes[1], abs=1e-10)
    assert rl.z[1] == pytest.approx(return_level(50.0, p), abs=1e-12)
    assert np.all(np.isnan(rl.lo)) and not rl.interval_failed.any()


def test_return_level_plot_with_intervals(gumbel_blocks):
    result = fit(gumbel_blocks, "naive", QUIET)
    rl = return_level_plot_data(gumbel_blocks, result, r_grid=[10.0, 100.0], options=QUIET)
    assert not rl.interval_failed.any()
    assert np.all(rl.lo < rl.z) and np.all(rl.z < rl.hi)
    assert np.all(np.diff(rl.z) > 0)
    np.testing.assert_allclose(rl.empirical_r, 1 / (1 - plotting_positions(200)))
    assert rl.ticks[0] == (2.0, pytest.approx(0.159175, abs=1e-6))
    assert len(rl.ticks) == 9


# --- DENSITÉ ---

def test_density_histogram_area(masked_blocks):
    result = fit(masked_blocks, "adjust", QUIET)
    density = density_plot_data(masked_blocks, result, n_bins=15)
    assert np.sum(density.heights * np.diff(density.bin_edges)) == pytest.approx(1.0, abs=1e-9)
    assert density.grid_z.size == 512


def test_density_single_bin():
    p = GevParams(0.0, 1.0, 0.0)
    data = BlockMaximaSet.from_arrays([0.0, 1.0, 3.0], [10, 10, 10], 10)
    density = density_plot_data(data, make_fit(p, 3), n_bins=1)
    assert density.heights.tolist() == pytest.approx([1 / 3.0])


def test_density_curve_peaks_at_mode():
    p = GevParams(0.0, 1.0, 0.1)
    data = BlockMaximaSet.from_arrays(gev_sample(p, 200, seed=2), np.full(200, 365), 365)
    result = make_fit(p, 200)
    density = density_plot_data(data, result)
    step = density.grid_z[1] - density.grid_z[0]
    assert abs(density.grid_z[np.argmax(density.pdf)] - gev_mode(result)) <= step


def test_density_grid_reaches_mode_outside_data():
    p = GevParams(0.0, 1.0, 0.0)
    data = BlockMaximaSet.from_arrays([5.0, 6.0, 7.0], [10, 10, 10], 10)
    density = density_plot_data(data, make_fit(p, 3))
    assert density.grid_z[0] < 0.0 < density.grid_z[-1]
    step = density.grid_z[1] - density.grid_z[0]
    assert abs(density.grid_z[np.argmax(density.pdf)]) <= step


def test_density_rejects_bad_bins(masked_blocks):
    with pytest.raises(ValueError):
        density_plot_data(masked_blocks, make_fit(GevParams(0, 1, 0), 150), n_bins=0)


# --- BUNDLE ---

def test_bundle_requires_converged_fit(gumbel_blocks):
    failed = make_fit(GevParams(10, 2, 0), 200)
    failed.converged = False
    with pytest.raises(ValueError):
        build_diagnostics(gumbel_blocks, failed)


def test_bundle_shapes(masked_blocks):
    result = fit(masked_blocks, "adjust", QUIET)
    bundle = build_diagnostics(masked_blocks, result, r_grid=[5.0, 50.0], options=QUIET, intervals=False)
    assert bundle.adjusted_maxima.size == masked_blocks.n_blocks
    assert bundle.density_params == result.params
    assert np.all(np.diff(bundle.return_levels.z) >= 0)


@pytest.mark.slow
def test_qq_band_coverage_on_gumbel_data():
    inside = []
    for seed in range(200):
        maxima = gev_sample(GevParams(0, 1, 0), 500, seed=seed)
        data = BlockMaximaSet.from_arrays(maxima, np.full(500, 365), 365)
        result = fit(data, "full", QUIET)
        qq = qq_plot_data(data, result)
        inside.append(np.mean((qq.adjusted_maximum >= qq.lo) & (qq.adjusted_maximum <= qq.hi)))
    assert np.mean(inside) >= 0.93
