import numpy as np
import pytest
from scipy.stats import genextreme

from src.gev import GevParams
from src.inference import BlockMaximaSet, EstimatorTag, FitResult


@pytest.fixture(autouse=True)
def isolated_log(tmp_path, monkeypatch):
    """Every test writes its experiment log under tmp_path."""
    log_file = tmp_path / "logs" / "experiment_data.json"
    monkeypatch.setenv("GEVMISS_LOG_FILE", str(log_file))
    monkeypatch.delenv("GEVMISS_THREADS", raising=False)
    monkeypatch.delenv("GEVMISS_SEED", raising=False)
    return log_file


def gev_sample(params: GevParams, size: int, seed: int) -> np.ndarray:
    """Draws from scipy's GEV (shape c = -xi), used as an independent generator."""
    return genextreme.rvs(-params.xi, loc=params.mu, scale=params.sigma, size=size, random_state=seed)


def make_fit(params: GevParams, b: int, tag: EstimatorTag = EstimatorTag.ADJUST) -> FitResult:
    """A converged FitResult with a small diagonal covariance, for plot-data tests."""
    vcov = np.diag([0.01, 0.005, 0.001])
    return FitResult(
        params=params,
        loglik=0.0,
        se=np.sqrt(np.diag(vcov)),
        vcov=vcov,
        converged=True,
        n_blocks_used=b,
        estimator=tag,
    )


@pytest.fixture
def gumbel_blocks() -> BlockMaximaSet:
    maxima = gev_sample(GevParams(10.0, 2.0, 0.0), 200, seed=11)
    return BlockMaximaSet.from_arrays(maxima, np.full(200, 365), 365)


@pytest.fixture
def masked_blocks() -> BlockMaximaSet:
    """Gumbel(0, 1) full-block maxima with about 20% of each block missing at random."""
    rng = np.random.default_rng(5)
    b, n = 150, 100
    raw = rng.exponential(size=(b, n))
    n_obs = n - rng.integers(0, 40, size=b)
    maxima = np.array([row[:k].max() for row, k in zip(raw, n_obs)]) - np.log(n)
    return BlockMaximaSet.from_arrays(maxima, n_obs, n)
