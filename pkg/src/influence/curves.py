"""
Influence curves of the GEV maximum-likelihood estimator.

IF(y) = i(theta)^-1 * d log g(y; theta) / d theta, with the score taken by
central differences and the expected information i(theta) estimated once
per shape value by an antithetic Monte Carlo average of score outer
products. Curves are indexed by standard-normal abscissae z, mapped to the
GEV scale through y = G^-1(Phi(z)).
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.stats import norm

from src.gev.core import GevParams, gev_logpdf_arrays, gev_quantile_arrays, return_level_gradient
from src.utils.errors import GevDomainError, SingularInformationError

SCORE_REL_STEP = 1e-6
INFORMATION_DRAWS = 1_000_000
INFORMATION_SEED = 0x5EED
PARAM_NAMES = ("mu", "sigma", "xi")


def default_grid() -> np.ndarray:
    return np.linspace(-4.0, 4.0, 201)


@dataclass(frozen=True)
class InfluenceCurve:
    grid_z: np.ndarray
    params: GevParams
    values: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def targets(self) -> tuple[str, ...]:
        return tuple(self.values)

    def as_matrix(self) -> np.ndarray:
        """Columns (mu, sigma, xi) stacked as an (len(grid), 3) array."""
        return np.column_stack([self.values[name] for name in PARAM_NAMES])


def gev_scores(y, p: GevParams, rel_step: float = SCORE_REL_STEP) -> np.ndarray:
    """Per-observation score vectors, shape (len(y), 3)."""
    y = np.asarray(y, dtype=float).reshape(-1)
    theta = p.as_array()
    steps = rel_step * (1.0 + np.abs(theta))
    scores = np.empty((y.size, 3))
    for j in range(3):
        up, down = theta.copy(), theta.copy()
        up[j] += steps[j]
        down[j] -= steps[j]
        with np.errstate(invalid="ignore"):
            scores[:, j] = (
                gev_logpdf_arrays(y, up[0], up[1], up[2]) - gev_logpdf_arrays(y, down[0], down[1], down[2])
            ) / (2.0 * steps[j])
    return scores


@lru_cache(maxsize=64)
def _standard_information(xi: float, n_draws: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random(n_draws // 2)
    u = np.concatenate([u, 1.0 - u])
    u = u[(u > 0.0) & (u < 1.0)]
    y = gev_quantile_arrays(-np.log(u), 0.0, 1.0, xi)
    scores = gev_scores(y, GevParams(0.0, 1.0, xi))
    scores = scores[np.all(np.isfinite(scores), axis=1)]
    info = scores.T @ scores / scores.shape[0]
    info = (info + info.T) / 2.0
    info.setflags(write=False)
    return info


def expected_information(p: GevParams, n_draws: int = INFORMATION_DRAWS, seed: int = INFORMATION_SEED) -> np.ndarray:
    """
    Per-observation Fisher information at p.

    Estimated at (0, 1, xi) and rescaled; location and scale enter the
    information only through 1/sigma factors.

    Raises:
        SingularInformationError: If the estimate is not positive definite.
    """
    standard = _standard_information(float(p.xi), int(n_draws), int(seed))
    scale = np.array([1.0 / p.sigma, 1.0 / p.sigma, 1.0])
    info = standard * np.outer(scale, scale)
    if not np.all(np.isfinite(info)):
        raise SingularInformationError(f"expected information is not finite at xi={p.xi}")
    eigvals = np.linalg.eigvalsh(info)
    if eigvals.min() <= 1e-12 * eigvals.max():
        raise SingularInformationError(f"expected information is singular at xi={p.xi}")
    return info


def _validate_grid(grid: Optional[Sequence[float]]) -> np.ndarray:
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float).reshape(-1)
    if grid.size == 0 or not np.all(np.isfinite(grid)):
        raise GevDomainError("influence grid must be a non-empty set of finite values")
    if np.any(np.diff(grid) <= 0):
        raise GevDomainError("influence grid must be strictly increasing")
    return grid


def normal_to_gev(grid_z, p: GevParams) -> np.ndarray:
    """y = G^-1(Phi(z)), computed through -log Phi(z)."""
    return gev_quantile_arrays(-norm.logcdf(np.asarray(grid_z, dtype=float)), p.mu, p.sigma, p.xi)


def influence_params(p: GevParams, grid: Optional[Sequence[float]] = None) -> InfluenceCurve:
    grid = _validate_grid(grid)
    info = expected_information(p)
    scores = gev_scores(normal_to_gev(grid, p), p)
    values = np.linalg.solve(info, scores.T).T
    return InfluenceCurve(
        grid_z=grid, params=p, values={name: values[:, j] for j, name in enumerate(PARAM_NAMES)}
    )


def influence_return_level(p: GevParams, r: float, grid: Optional[Sequence[float]] = None) -> np.ndarray:
    """Chain rule: gradient of z_r in theta dotted with the parameter influence."""
    curve = influence_params(p, grid)
    return curve.as_matrix() @ return_level_gradient(r, p)


def influence_curves(p: GevParams, periods: Sequence[float] = (), grid: Optional[Sequence[float]] = None) -> InfluenceCurve:
    """Parameter curves plus one `rl<r>` curve per requested return period."""
    curve = influence_params(p, grid)
    values = dict(curve.values)
    matrix = curve.as_matrix()
    for r in periods:
        values[f"rl{r:g}"] = matrix @ return_level_gradient(r, p)
    return InfluenceCurve(grid_z=curve.grid_z, params=p, values=values)
