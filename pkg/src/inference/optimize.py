"""
Derivative-free maximisation and observed information for GEV likelihoods.

The simplex works in scaled coordinates u, with
mu = mu0 + sigma0 * u[0], sigma = sigma0 * exp(u[1]), xi = u[2],
so tolerances are dimensionless and a shift of the data shifts the whole
search path.
"""

import math
from dataclasses import dataclass

import numdifftools as nd
import numpy as np
from scipy.optimize import minimize

from src.inference.likelihood import Objective
from src.inference.types import FitOptions

EULER_GAMMA = 0.5772

_SIMPLEX_STEPS = np.array([0.2, 0.2, 0.1])


@dataclass(frozen=True)
class Optimum:
    theta: np.ndarray
    loglik: float
    success: bool
    message: str
    n_evaluations: int


def moment_start(maxima: np.ndarray, xi_start: float) -> np.ndarray:
    """Gumbel moment estimates of location and scale with a fixed shape."""
    sd = float(np.std(maxima, ddof=1)) if maxima.size > 1 else 0.0
    sigma0 = sd * math.sqrt(6.0) / math.pi
    if not sigma0 > 0:
        sigma0 = 1e-3 * (1.0 + abs(float(np.mean(maxima))))
    mu0 = float(np.mean(maxima)) - EULER_GAMMA * sigma0
    return np.array([mu0, sigma0, xi_start])


def feasible_start(loglik: Objective, maxima: np.ndarray, options: FitOptions) -> np.ndarray:
    start = moment_start(maxima, options.xi_start)
    if np.isfinite(loglik(start)):
        return start
    # the Gumbel member has unbounded support on both sides
    return moment_start(maxima, 0.0)


def _simplex(u0: np.ndarray, steps: np.ndarray) -> np.ndarray:
    return np.vstack([u0, u0 + np.diag(steps)])


def maximise(loglik: Objective, start: np.ndarray, options: FitOptions) -> Optimum:
    """Nelder-Mead on -loglik with one restart from the incumbent."""
    mu0, sigma0 = float(start[0]), float(start[1])

    def to_theta(u: np.ndarray) -> np.ndarray:
        return np.array([mu0 + sigma0 * u[0], sigma0 * math.exp(u[1]), u[2]])

    def negative(u: np.ndarray) -> float:
        if not np.all(np.isfinite(u)) or u[1] > 700:
            return np.inf
        value = loglik(to_theta(u))
        return -value if np.isfinite(value) else np.inf

    u = np.array([0.0, 0.0, float(start[2])])
    n_eval = 0
    rounds = 2 if options.restart else 1
    result = None
    for _ in range(rounds):
        f_scale = negative(u)
        fatol = options.fatol_rel * (1.0 + abs(f_scale)) if np.isfinite(f_scale) else options.fatol_rel
        result = minimize(
            negative,
            u,
            method="Nelder-Mead",
            options={
                "initial_simplex": _simplex(u, _SIMPLEX_STEPS),
                "xatol": options.xatol,
                "fatol": fatol,
                "maxiter": options.max_iter,
                "maxfev": 4 * options.max_iter,
            },
        )
        n_eval += int(result.nfev)
        u = result.x
    theta = to_theta(u)
    value = -float(result.fun)
    success = bool(result.success) and math.isfinite(value)
    return Optimum(theta, value, success, str(result.message), n_eval)


def observed_information(loglik: Objective, theta: np.ndarray, rel_step: float) -> np.ndarray:
    """
    Negative Hessian of loglik at theta by central differences with
    per-parameter step rel_step * (1 + |theta_j|).
    """
    scale = 1.0 + np.abs(theta)

    def scaled(v: np.ndarray) -> float:
        return loglik(theta + scale * v)

    hess_v = nd.Hessian(scaled, step=rel_step, method="central")(np.zeros_like(theta))
    hess = hess_v / np.outer(scale, scale)
    info = -hess
    return (info + info.T) / 2.0


def invert_information(info: np.ndarray) -> tuple[np.ndarray, bool]:
    """Covariance from the information matrix; flag False if not positive definite."""
    if not np.all(np.isfinite(info)):
        return np.full_like(info, np.nan), False
    try:
        eigvals = np.linalg.eigvalsh(info)
        if eigvals.min() <= 0:
            return np.full_like(info, np.nan), False
        vcov = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        return np.full_like(info, np.nan), False
    return (vcov + vcov.T) / 2.0, True


def numerical_gradient(loglik: Objective, theta: np.ndarray, rel_step: float = 1e-6) -> np.ndarray:
    """Central-difference gradient, used for first-order optimality checks."""
    scale = 1.0 + np.abs(theta)
    grad_v = nd.Gradient(lambda v: loglik(theta + scale * v), step=rel_step, method="central")(np.zeros_like(theta))
    return np.asarray(grad_v) / scale
