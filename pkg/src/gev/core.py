"""
GEV distribution family and the missingness-dependent reparametrisation.

All public functions accept a scalar or an array for their first argument and
return the same kind. Evaluation switches to the Gumbel branch for
|xi| < XI_GUMBEL_THRESHOLD and otherwise works with
log t = -(1/xi) * log1p(xi * w), w = (z - mu) / sigma.
"""

import math
from dataclasses import dataclass

import numpy as np

from src.utils.errors import GevDomainError

XI_GUMBEL_THRESHOLD = 1e-8


@dataclass(frozen=True)
class GevParams:
    """
    Location, scale and shape of a GEV distribution.

    Raises:
        GevDomainError: If any field is non-finite or sigma <= 0.
    """
    mu: float
    sigma: float
    xi: float

    def __post_init__(self):
        for name in ("mu", "sigma", "xi"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise GevDomainError(f"GEV parameter {name} must be a finite real, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.sigma <= 0:
            raise GevDomainError(f"GEV scale must be positive, got sigma={self.sigma}")

    def as_array(self) -> np.ndarray:
        return np.array([self.mu, self.sigma, self.xi], dtype=float)

    @classmethod
    def from_array(cls, theta) -> "GevParams":
        mu, sigma, xi = (float(v) for v in theta)
        return cls(mu, sigma, xi)

    @property
    def is_gumbel(self) -> bool:
        return abs(self.xi) < XI_GUMBEL_THRESHOLD

    def support(self) -> tuple[float, float]:
        """Lower and upper endpoints (infinite where unbounded)."""
        if self.is_gumbel:
            return -math.inf, math.inf
        endpoint = self.mu - self.sigma / self.xi
        return (endpoint, math.inf) if self.xi > 0 else (-math.inf, endpoint)


@dataclass(frozen=True)
class MissingnessFraction:
    """
    Non-missing count of a block against its full size.

    Raises:
        GevDomainError: Unless 1 <= n_obs <= n_full.
    """
    n_obs: int
    n_full: int

    def __post_init__(self):
        for name in ("n_obs", "n_full"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise GevDomainError(f"{name} must be an integer count, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not 1 <= self.n_obs <= self.n_full:
            raise GevDomainError(
                f"need 1 <= n_obs <= n_full, got n_obs={self.n_obs}, n_full={self.n_full}"
            )

    def ratio(self) -> float:
        return self.n_obs / self.n_full

    @property
    def is_complete(self) -> bool:
        return self.n_obs == self.n_full


def _finish(values: np.ndarray, scalar: bool):
    return float(values) if scalar else values


def gev_logpdf_arrays(z, mu, sigma, xi: float) -> np.ndarray:
    """
    Log-density with broadcasting over z, mu and sigma (xi scalar).
    No validation; -inf at and beyond the support endpoints.
    """
    z, mu, sigma = np.broadcast_arrays(
        np.asarray(z, dtype=float), np.asarray(mu, dtype=float), np.asarray(sigma, dtype=float)
    )
    w = (z - mu) / sigma
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if abs(xi) < XI_GUMBEL_THRESHOLD:
            return -np.log(sigma) - w - np.exp(-w)
        arg = xi * w
        out = np.full(w.shape, -np.inf)
        inside = arg > -1.0
        log_t = -np.log1p(arg[inside]) / xi
        out[inside] = -np.log(sigma[inside]) + (xi + 1.0) * log_t - np.exp(log_t)
    return out


def gev_cdf_arrays(z, mu, sigma, xi: float) -> np.ndarray:
    z, mu, sigma = np.broadcast_arrays(
        np.asarray(z, dtype=float), np.asarray(mu, dtype=float), np.asarray(sigma, dtype=float)
    )
    w = (z - mu) / sigma
    with np.errstate(over="ignore"):
        if abs(xi) < XI_GUMBEL_THRESHOLD:
            return np.exp(-np.exp(-w))
        arg = xi * w
        inside = arg > -1.0
        # below the lower endpoint (xi > 0) or above the upper one (xi < 0)
        out = np.full(w.shape, 0.0 if xi > 0 else 1.0)
        out[inside] = np.exp(-np.exp(-np.log1p(arg[inside]) / xi))
    return out


def gev_quantile_arrays(y, mu, sigma, xi: float) -> np.ndarray:
    """Quantile expressed through y = -log(prob) > 0."""
    log_y = np.log(np.asarray(y, dtype=float))
    if abs(xi) < XI_GUMBEL_THRESHOLD:
        return mu - sigma * log_y
    return mu + sigma * np.expm1(-xi * log_y) / xi


def adjust_arrays(mu: float, sigma: float, xi: float, ratio) -> tuple[np.ndarray, np.ndarray]:
    """Block-specific (mu(n_i), sigma(n_i)) for an array of ratios n_i/n."""
    log_ratio = np.log(np.asarray(ratio, dtype=float))
    if abs(xi) < XI_GUMBEL_THRESHOLD:
        return mu + sigma * log_ratio, np.full(log_ratio.shape, float(sigma))
    return mu + sigma * np.expm1(xi * log_ratio) / xi, sigma * np.exp(xi * log_ratio)


def gev_cdf(z, p: GevParams):
    """G(z; mu, sigma, xi), exactly 0/1 beyond the support endpoints."""
    scalar = np.ndim(z) == 0
    return _finish(gev_cdf_arrays(z, p.mu, p.sigma, p.xi), scalar)


def gev_logpdf(z, p: GevParams):
    scalar = np.ndim(z) == 0
    return _finish(gev_logpdf_arrays(z, p.mu, p.sigma, p.xi), scalar)


def gev_pdf(z, p: GevParams):
    """Density; 0 at and beyond the support endpoints."""
    scalar = np.ndim(z) == 0
    return _finish(np.exp(gev_logpdf_arrays(z, p.mu, p.sigma, p.xi)), scalar)


def gev_quantile(prob, p: GevParams):
    """
    Inverse of gev_cdf.

    Raises:
        GevDomainError: If any prob is outside (0, 1).
    """
    scalar = np.ndim(prob) == 0
    prob = np.asarray(prob, dtype=float)
    if not np.all((prob > 0) & (prob < 1)):
        raise GevDomainError("quantile probabilities must lie strictly inside (0, 1)")
    return _finish(gev_quantile_arrays(-np.log(prob), p.mu, p.sigma, p.xi), scalar)


def adjust_params(p: GevParams, frac: MissingnessFraction) -> GevParams:
    """
    Parameters of the block-maximum law when only frac.n_obs of frac.n_full
    values are observed: G(z; adjusted) = G(z; p) ** frac.ratio().
    """
    if not isinstance(frac, MissingnessFraction):
        raise GevDomainError(f"expected a MissingnessFraction, got {type(frac).__name__}")
    if frac.is_complete:
        return p
    mu, sigma = adjust_arrays(p.mu, p.sigma, p.xi, frac.ratio())
    return GevParams(float(mu), float(sigma), p.xi)


def reduced_variate(r):
    """y_r = -log(1 - 1/r), the exponent of the (1 - 1/r) quantile."""
    r = np.asarray(r, dtype=float)
    if not np.all(r > 1):
        raise GevDomainError("return period must exceed 1 block")
    return -np.log1p(-1.0 / r)


def return_level(r, p: GevParams):
    """Level exceeded on average once every r blocks."""
    scalar = np.ndim(r) == 0
    return _finish(gev_quantile_arrays(reduced_variate(r), p.mu, p.sigma, p.xi), scalar)


def return_level_gradient(r: float, p: GevParams) -> np.ndarray:
    """Analytic d z_r / d(mu, sigma, xi)."""
    log_y = math.log(float(reduced_variate(r)))
    if p.is_gumbel:
        return np.array([1.0, -log_y, p.sigma * log_y ** 2 / 2.0])
    xi = p.xi
    growth = math.expm1(-xi * log_y) / xi
    d_xi = -p.sigma * growth / xi - p.sigma * math.exp(-xi * log_y) * log_y / xi
    return np.array([1.0, growth, d_xi])
