"""
Return-level inference: profile likelihood and delta-method intervals.

The location is re-expressed through the return level,
mu = z_r - sigma * ((y_r ** -xi) - 1) / xi   (mu = z_r + sigma * log y_r when xi = 0),
and the log-likelihood is maximised over (log sigma, xi) for each fixed z_r.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import bisect, minimize
from scipy.stats import chi2, norm

from src.estimators import EstimatorLike, get_estimator
from src.gev.core import XI_GUMBEL_THRESHOLD, reduced_variate, return_level, return_level_gradient
from src.inference.likelihood import Objective
from src.inference.types import BlockMaximaSet, FitOptions, FitResult, ReturnLevelEstimate
from src.utils.errors import GevDomainError
from src.utils.logger import ActionType, log_experiment

_LARGE_DEVIANCE = 1e12


@dataclass(frozen=True)
class ProfileOptions:
    grid_size: int = 400
    span_se: float = 8.0
    rtol: float = 1e-6
    max_expansions: int = 30
    fatol_rel: float = 1e-10
    xatol: float = 1e-8
    max_iter: int = 2000

    def __post_init__(self):
        if self.grid_size < 3:
            raise GevDomainError("profile grid needs at least 3 points")


def deviance_cutoff(level: float) -> float:
    if not 0.0 < level < 1.0:
        raise GevDomainError("confidence level must lie in (0, 1)")
    return float(chi2.ppf(level, 1))


class ReturnLevelProfile:
    """
    Profile log-likelihood of the r-block return level for one fitted model.
    """

    def __init__(self, loglik: Objective, fit: FitResult, r: float, options: Optional[ProfileOptions] = None):
        if not fit.converged:
            raise ValueError("return-level profiling needs a converged fit")
        self.loglik = loglik
        self.fit = fit
        self.r = float(r)
        self.options = options or ProfileOptions()
        self.log_y = math.log(float(reduced_variate(r)))
        self.point = float(return_level(r, fit.params))
        self.fitted_start = np.array([math.log(fit.params.sigma), fit.params.xi])

    def location(self, z: float, sigma: float, xi: float) -> float:
        if abs(xi) < XI_GUMBEL_THRESHOLD:
            return z + sigma * self.log_y
        return z - sigma * math.expm1(-xi * self.log_y) / xi

    def _negative(self, z: float):
        def negative(v: np.ndarray) -> float:
            if not np.all(np.isfinite(v)) or v[0] > 700:
                return np.inf
            sigma = math.exp(v[0])
            value = self.loglik(np.array([self.location(z, sigma, v[1]), sigma, v[1]]))
            return -value if np.isfinite(value) else np.inf
        return negative

    def maximise_at(self, z: float, starts: Sequence[np.ndarray]) -> tuple[float, np.ndarray]:
        """Profile log-likelihood at z, best over the given (log sigma, xi) starts."""
        negative = self._negative(z)
        best_value, best_v = -np.inf, np.asarray(starts[0], dtype=float)
        for start in starts:
            start = np.asarray(start, dtype=float)
            f0 = negative(start)
            fatol = self.options.fatol_rel * (1.0 + abs(f0)) if np.isfinite(f0) else self.options.fatol_rel
            result = minimize(
                negative,
                start,
                method="Nelder-Mead",
                options={
                    "initial_simplex": np.vstack([start, start + np.diag([0.1, 0.05])]),
                    "xatol": self.options.xatol,
                    "fatol": fatol,
                    "maxiter": self.options.max_iter,
                },
            )
            value = -float(result.fun)
            if value > best_value:
                best_value, best_v = value, result.x
        return best_value, best_v

    def deviance(self, z: float, starts: Optional[Sequence[np.ndarray]] = None) -> tuple[float, np.ndarray]:
        """2 (l_hat - l_prof(z)), floored at 0."""
        starts = starts if starts is not None else [self.fitted_start]
        value, solution = self.maximise_at(z, starts)
        if not np.isfinite(value):
            return math.inf, solution
        return max(0.0, 2.0 * (self.fit.loglik - value)), solution

    def delta_se(self) -> float:
        grad = return_level_gradient(self.r, self.fit.params)
        var = float(grad @ self.fit.vcov @ grad)
        return math.sqrt(var) if var > 0 and math.isfinite(var) else math.nan

    def covers(self, z_true: float, level: float) -> bool:
        """Whether z_true lies inside the profile interval at `level`."""
        starts = [self.fitted_start, np.array([self.fitted_start[0], 0.0])]
        dev, _ = self.deviance(z_true, starts)
        return dev <= deviance_cutoff(level)

    def _walk(self, direction: int, step: float, cutoff: float) -> tuple[float, bool]:
        """
        Move away from the point estimate until the deviance exceeds the
        cutoff, then bisect the crossing. Returns (bound, open_flag).
        """
        n_half = (self.options.grid_size - 1) // 2
        inside_z, inside_v = self.point, self.fitted_start
        expansions = 0
        k = 0
        while True:
            k += 1
            if k <= n_half:
                z = self.point + direction * k * step
            else:
                expansions += 1
                if expansions > self.options.max_expansions:
                    return (math.inf if direction > 0 else -math.inf), True
                z = inside_z + direction * step * 2.0 ** expansions
            dev, solution = self.deviance(z, [inside_v])
            if dev > cutoff:
                break
            inside_z, inside_v = z, solution

        start = inside_v

        def excess(zz: float) -> float:
            d, _ = self.deviance(zz, [start])
            return min(d, _LARGE_DEVIANCE) - cutoff

        a, b = sorted((inside_z, z))
        bound = bisect(excess, a, b, rtol=self.options.rtol, xtol=1e-12 * (1.0 + abs(self.point)))
        return bound, False

    def interval(self, level: float) -> ReturnLevelEstimate:
        cutoff = deviance_cutoff(level)
        se = self.delta_se()
        if not se > 0:
            se = 0.1 * self.fit.params.sigma * (1.0 + abs(self.log_y))
        step = 2.0 * self.options.span_se * se / (self.options.grid_size - 1)
        lo, lower_open = self._walk(-1, step, cutoff)
        hi, upper_open = self._walk(+1, step, cutoff)
        lo, hi = min(lo, self.point), max(hi, self.point)
        notes = None
        if upper_open or lower_open:
            notes = "profile likelihood did not cross the cutoff on the " + (
                "upper side" if upper_open else "lower side"
            )
        return ReturnLevelEstimate(
            period_r=self.r,
            point=self.point,
            lo=lo,
            hi=hi,
            method="profile",
            level=level,
            lower_open=lower_open,
            upper_open=upper_open,
            notes=notes,
        )


def build_profile(
    data: BlockMaximaSet,
    estimator: EstimatorLike,
    r: float,
    options: Optional[FitOptions] = None,
    fit_result: Optional[FitResult] = None,
    profile_options: Optional[ProfileOptions] = None,
) -> ReturnLevelProfile:
    est = get_estimator(estimator, options)
    selected = est.prepare(data)
    fitted = fit_result if fit_result is not None else est.fit(data)
    return ReturnLevelProfile(est.objective(selected), fitted, r, profile_options)


def profile_return_level(
    data: BlockMaximaSet,
    estimator: EstimatorLike,
    r: float,
    level: float = 0.95,
    options: Optional[FitOptions] = None,
    fit_result: Optional[FitResult] = None,
    profile_options: Optional[ProfileOptions] = None,
) -> ReturnLevelEstimate:
    """
    Profile-likelihood interval for the r-block return level.

    Raises:
        GevDomainError: If r <= 1 or level is outside (0, 1).
        ValueError: If the fit did not converge.
    """
    deviance_cutoff(level)
    profile = build_profile(data, estimator, r, options, fit_result, profile_options)
    estimate = profile.interval(level)
    if (options or FitOptions()).record:
        log_experiment(
            component="ReturnLevelProfile",
            estimator=profile.fit.estimator.value,
            action=ActionType.INFERENCE,
            details={
                "input_summary": f"r={r}, level={level}, {data.n_blocks} blocks",
                "output_summary": {"point": estimate.point, "lo": estimate.lo, "hi": estimate.hi},
            },
            status="PARTIAL" if estimate.upper_open or estimate.lower_open else "SUCCESS",
        )
    return estimate


def delta_return_level(fit: FitResult, r: float, level: float = 0.95) -> ReturnLevelEstimate:
    """Symmetric Wald interval from the analytic return-level gradient."""
    if not 0.0 < level < 1.0:
        raise GevDomainError("confidence level must lie in (0, 1)")
    point = float(return_level(r, fit.params))
    grad = return_level_gradient(r, fit.params)
    var = float(grad @ fit.vcov @ grad)
    half = float(norm.ppf(0.5 + level / 2.0)) * math.sqrt(var) if var >= 0 else math.nan
    return ReturnLevelEstimate(
        period_r=float(r), point=point, lo=point - half, hi=point + half, method="delta", level=level
    )


def profile_covers(profile: ReturnLevelProfile, z_true: float, level: float = 0.95) -> bool:
    """Interval containment from one profile evaluation at z_true."""
    return profile.covers(z_true, level)
