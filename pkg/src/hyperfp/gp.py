"""Exact Gaussian process regression and the expected improvement score."""

from __future__ import annotations

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.stats import norm

__all__ = ["GpNumericsError", "expected_improvement", "gp_fit_predict"]

# escalating diagonal jitter when the noisy kernel matrix fails to factor
_JITTER_LADDER = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6)

_SD_FLOOR = 1e-15


class GpNumericsError(RuntimeError):
    """Kernel matrix is not positive definite even at maximum jitter."""


def _sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aa = np.sum(a * a, axis=1)[:, None]
    bb = np.sum(b * b, axis=1)[None, :]
    return np.maximum(aa + bb - 2.0 * (a @ b.T), 0.0)


def gp_fit_predict(X, y, Xq, lengthscale: float, noise: float):
    """Posterior mean and latent variance of a unit-signal-variance GP.

    Squared-exponential kernel exp(-||a-b||^2 / (2 l^2)) with ``noise`` on
    the training diagonal, solved by Cholesky with an escalating jitter
    ladder. Returns (means, variances) at the query points; variances are
    clipped to be non-negative.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Xq = np.atleast_2d(np.asarray(Xq, dtype=np.float64))
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"X has {X.shape[0]} rows but y has {y.shape[0]}")
    if X.shape[0] == 0:
        raise ValueError("GP requires at least one observation")
    if not (lengthscale > 0.0):
        raise ValueError(f"lengthscale must be positive, got {lengthscale}")
    if not (noise > 0.0):
        raise ValueError(f"noise must be positive, got {noise}")

    K = np.exp(-_sq_dists(X, X) / (2.0 * lengthscale**2))
    K[np.diag_indices_from(K)] += noise
    L = None
    for jitter in _JITTER_LADDER:
        try:
            L = cholesky(K + jitter * np.eye(K.shape[0]), lower=True)
            break
        except LinAlgError:
            continue
    if L is None:
        raise GpNumericsError(
            "kernel matrix not positive definite at maximum jitter "
            f"{_JITTER_LADDER[-1]:g}"
        )

    k_star = np.exp(-_sq_dists(X, Xq) / (2.0 * lengthscale**2))
    alpha = cho_solve((L, True), y)
    means = k_star.T @ alpha
    v = solve_triangular(L, k_star, lower=True)
    variances = np.maximum(1.0 - np.sum(v * v, axis=0), 0.0)
    return means, variances


def expected_improvement(mean, variance, best):
    """Expected improvement below ``best`` under a Gaussian posterior.

    Minimization convention: EI = (best - mean) * cdf(z) + sd * pdf(z) with
    z = (best - mean) / sd; at zero variance this degenerates to
    max(best - mean, 0). Accepts scalars or arrays.
    """
    mean_arr = np.asarray(mean, dtype=np.float64)
    var_arr = np.asarray(variance, dtype=np.float64)
    sd = np.sqrt(np.maximum(var_arr, 0.0))
    improvement = best - mean_arr
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(sd > _SD_FLOOR, improvement / np.maximum(sd, _SD_FLOOR), 0.0)
        ei = np.where(
            sd > _SD_FLOOR,
            improvement * norm.cdf(z) + sd * norm.pdf(z),
            np.maximum(improvement, 0.0),
        )
    ei = np.maximum(ei, 0.0)
    if np.isscalar(mean) and np.isscalar(variance):
        return float(ei)
    return ei
