import math

import numpy as np
import pytest
from scipy.integrate import quad

from src.gev import (
    GevParams,
    MissingnessFraction,
    adjust_params,
    gev_cdf,
    gev_logpdf,
    gev_pdf,
    gev_quantile,
    return_level,
    return_level_gradient,
)
from src.utils.errors import GevDomainError


# --- PARAMÈTRES ---

def test_params_reject_non_positive_scale():
    with pytest.raises(GevDomainError):
        GevParams(0.0, 0.0, 0.1)
    with pytest.raises(ValueError):
        GevParams(0.0, -1.0, 0.1)


def test_params_reject_non_finite():
    with pytest.raises(GevDomainError):
        GevParams(math.nan, 1.0, 0.0)
    with pytest.raises(GevDomainError):
        GevParams(0.0, 1.0, math.inf)


@pytest.mark.parametrize("n_obs,n_full", [(0, 10), (11, 10), (2.5, 10)])
def test_missingness_fraction_bounds(n_obs, n_full):
    with pytest.raises(GevDomainError):
        MissingnessFraction(n_obs, n_full)


def test_support_endpoints():
    assert GevParams(0.0, 1.0, 0.5).support() == (-2.0, math.inf)
    assert GevParams(0.0, 1.0, -0.5).support() == (-math.inf, 2.0)
    assert GevParams(0.0, 1.0, 0.0).support() == (-math.inf, math.inf)


# --- CDF / DENSITÉ / QUANTILE ---

def test_cdf_examples():
    assert gev_cdf(0.0, GevParams(0, 1, 0)) == pytest.approx(math.exp(-1), abs=1e-15)
    assert gev_cdf(0.0, GevParams(0, 1, 0.5)) == pytest.approx(math.exp(-1), abs=1e-15)
    assert gev_cdf(-2.5, GevParams(0, 1, 0.5)) == 0.0
    assert gev_cdf(2.5, GevParams(0, 1, -0.5)) == 1.0


def test_cdf_accepts_arrays():
    z = np.linspace(-3, 3, 7)
    out = gev_cdf(z, GevParams(0, 1, 0.1))
    assert isinstance(out, np.ndarray)
    assert out.shape == z.shape
    assert isinstance(gev_cdf(0.0, GevParams(0, 1, 0.1)), float)


def test_cdf_non_decreasing():
    for xi in (-0.4, -0.1, 0.0, 0.1, 0.5):
        values = gev_cdf(np.linspace(-10, 10, 2001), GevParams(0.5, 1.5, xi))
        assert np.all(np.diff(values) >= 0)


def test_pdf_examples():
    assert gev_pdf(0.0, GevParams(0, 1, 0)) == pytest.approx(math.exp(-1), abs=1e-15)
    assert gev_pdf(5.0, GevParams(0, 1, -0.5)) == 0.0
    assert gev_logpdf(5.0, GevParams(0, 1, -0.5)) == -math.inf


def test_pdf_matches_cdf_derivative():
    p = GevParams(0, 1, 0.2)
    h = 1e-5
    numeric = (gev_cdf(1.0 + h, p) - gev_cdf(1.0 - h, p)) / (2 * h)
    assert gev_pdf(1.0, p) == pytest.approx(numeric, abs=1e-8)


@pytest.mark.parametrize("xi", [-0.4, -0.1, 0.0, 0.1, 0.5])
def test_pdf_integrates_to_one(xi):
    p = GevParams(0.0, 1.0, xi)
    lo, hi = p.support()
    area, _ = quad(lambda z: gev_pdf(z, p), lo, hi, limit=200)
    assert area == pytest.approx(1.0, abs=1e-6)


def test_quantile_examples():
    assert gev_quantile(0.99, GevParams(0, 1, 0)) == pytest.approx(-math.log(-math.log(0.99)), abs=1e-12)
    assert gev_quantile(0.99, GevParams(0, 1, 0)) == pytest.approx(4.60015, abs=1e-5)
    assert gev_quantile(math.exp(-1), GevParams(3.0, 2.0, 0)) == pytest.approx(3.0, abs=1e-12)
    expected = (math.log(2) ** -0.5 - 1) / 0.5
    assert gev_quantile(0.5, GevParams(0, 1, 0.5)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("prob", [0.0, 1.0, -0.1, 1.5])
def test_quantile_domain(prob):
    with pytest.raises(GevDomainError):
        gev_quantile(prob, GevParams(0, 1, 0))


@pytest.mark.parametrize("xi", [-0.4, -0.1, 0.0, 1e-9, 0.1, 0.5])
def test_quantile_cdf_round_trip(xi):
    p = GevParams(1.0, 2.0, xi)
    probs = np.concatenate([np.logspace(-6, -1, 20), np.linspace(0.1, 0.9, 17), 1 - np.logspace(-1, -6, 20)])
    back = gev_cdf(gev_quantile(probs, p), p)
    assert np.max(np.abs(back - probs)) < 1e-10


def test_gumbel_continuity():
    z = gev_quantile(np.linspace(0.001, 0.999, 500), GevParams(0, 1, 0))
    for xi in (1e-9, 2e-8):
        diff = np.abs(gev_cdf(z, GevParams(0, 1, xi)) - gev_cdf(z, GevParams(0, 1, 0)))
        assert diff.max() < 1e-7


# --- AJUSTEMENT ---

def test_adjust_examples():
    adj = adjust_params(GevParams(0, 1, 0), MissingnessFraction(1, 2))
    assert (adj.mu, adj.sigma, adj.xi) == pytest.approx((-math.log(2), 1.0, 0.0), abs=1e-15)
    adj = adjust_params(GevParams(0, 1, 0.5), MissingnessFraction(1, 4))
    assert (adj.mu, adj.sigma, adj.xi) == pytest.approx((-1.0, 0.5, 0.5), abs=1e-14)


def test_adjust_identity_when_complete():
    p = GevParams(3.2, 0.7, -0.15)
    assert adjust_params(p, MissingnessFraction(365, 365)) is p


def test_adjust_rejects_plain_ratio():
    with pytest.raises(GevDomainError):
        adjust_params(GevParams(0, 1, 0), 0.5)


def test_max_stability_identity():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        p = GevParams(rng.uniform(-5, 5), rng.uniform(0.1, 5), rng.uniform(-0.5, 0.5))
        n_full = int(rng.integers(2, 400))
        frac = MissingnessFraction(int(rng.integers(1, n_full + 1)), n_full)
        z = p.mu + p.sigma * rng.uniform(-4, 8)
        lhs = gev_cdf(z, adjust_params(p, frac))
        rhs = gev_cdf(z, p) ** frac.ratio()
        assert abs(lhs - rhs) < 1e-12


def test_adjust_composition():
    p = GevParams(1.0, 2.0, 0.3)
    once = adjust_params(adjust_params(p, MissingnessFraction(1, 2)), MissingnessFraction(3, 5))
    direct = adjust_params(p, MissingnessFraction(3, 10))
    assert once.mu == pytest.approx(direct.mu, abs=1e-12)
    assert once.sigma == pytest.approx(direct.sigma, abs=1e-12)


# --- NIVEAUX DE RETOUR ---

def test_return_level_examples():
    assert return_level(100, GevParams(0, 1, 0)) == pytest.approx(4.60015, abs=1e-5)
    assert return_level(100, GevParams(128.77, 18.81, 0.0)) == pytest.approx(215.3, abs=0.1)
    assert return_level(100, GevParams(52.89, 11.84, -0.02)) == pytest.approx(104.9, abs=0.1)


def test_return_level_monotone_and_domain():
    levels = return_level(np.array([2.0, 10.0, 100.0, 1000.0]), GevParams(0, 1, -0.2))
    assert np.all(np.diff(levels) > 0)
    with pytest.raises(GevDomainError):
        return_level(1.0, GevParams(0, 1, 0))


@pytest.mark.parametrize("xi", [-0.3, 0.0, 0.25])
def test_return_level_gradient_matches_finite_differences(xi):
    p = GevParams(1.0, 2.0, xi)
    theta = p.as_array()
    grad = return_level_gradient(50.0, p)
    h = 1e-6
    for j in range(3):
        up, down = theta.copy(), theta.copy()
        up[j] += h
        down[j] -= h
        numeric = (return_level(50.0, GevParams.from_array(up)) - return_level(50.0, GevParams.from_array(down))) / (2 * h)
        assert grad[j] == pytest.approx(numeric, rel=1e-6, abs=1e-6)


def test_return_level_gradient_gumbel_components():
    r = 25.0
    grad = return_level_gradient(r, GevParams(0, 1, 0))
    assert grad[0] == 1.0
    assert grad[1] == pytest.approx(-math.log(-math.log(1 - 1 / r)), abs=1e-14)
