"""Bayesian optimization over a fixed candidate library of fingerprints.

The objective is the absolute distance of each candidate's property value to
a target; each round fits a GP surrogate on the observed candidates and
queries the unobserved candidate with the highest expected improvement. A
random-choice acquisition serves as the baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from hyperfp.gp import expected_improvement, gp_fit_predict

__all__ = ["BoConfig", "BoTrace", "bo_run", "median_heuristic_lengthscale"]

_SEED_MASK = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class BoConfig:
    target_value: float
    init_points: int = 10
    rounds: int = 150
    lengthscale: float | None = None  # None selects the median heuristic
    noise_variance: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.init_points < 1:
            raise ValueError("init_points must be >= 1")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not (self.noise_variance > 0.0):
            raise ValueError("noise_variance must be positive")
        if self.lengthscale is not None and not (self.lengthscale > 0.0):
            raise ValueError("lengthscale must be positive when fixed")


@dataclass
class BoTrace:
    best_distance_per_round: np.ndarray
    auc: float
    queried: list[int] = field(default_factory=list)
    truncated: bool = False


def median_heuristic_lengthscale(X) -> float:
    """Median pairwise Euclidean distance; 1.0 when degenerate."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if n < 2:
        return 1.0
    sq = np.maximum(
        np.sum(X * X, axis=1)[:, None]
        + np.sum(X * X, axis=1)[None, :]
        - 2.0 * (X @ X.T),
        0.0,
    )
    iu = np.triu_indices(n, k=1)
    med = float(np.median(np.sqrt(sq[iu])))
    return med if med > 0.0 else 1.0


def bo_run(X, y, cfg: BoConfig, acquisition: str = "ei") -> BoTrace:
    """Seed-deterministic BO loop; returns the best-so-far trace and its AUC.

    Observed objectives are z-standardized before each GP fit so the unit
    signal variance of the surrogate matches the data scale. Exhausting the
    library before the round budget truncates the trace and sets a flag.
    """
    if acquisition not in ("ei", "random"):
        raise ValueError(f"unknown acquisition {acquisition!r}")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    n = X.shape[0]
    if X.ndim != 2 or n != y.shape[0]:
        raise ValueError(f"library shapes disagree: X {X.shape}, y {y.shape}")
    if n <= cfg.init_points:
        raise ValueError(
            f"library of {n} cannot supply {cfg.init_points} initial points"
        )

    objective = np.abs(y - cfg.target_value)
    rng = np.random.default_rng(cfg.seed & _SEED_MASK)
    observed = np.zeros(n, dtype=bool)
    init_idx = rng.choice(n, size=cfg.init_points, replace=False)
    observed[init_idx] = True

    lengthscale = cfg.lengthscale
    if lengthscale is None:
        lengthscale = median_heuristic_lengthscale(X[init_idx])

    best = float(objective[observed].min())
    trace: list[float] = []
    queried: list[int] = []
    truncated = False
    for _ in range(cfg.rounds):
        unobserved = np.flatnonzero(~observed)
        if unobserved.size == 0:
            truncated = True
            break
        if acquisition == "random":
            pick = int(unobserved[rng.integers(unobserved.size)])
        else:
            obs_idx = np.flatnonzero(observed)
            obs_obj = objective[obs_idx]
            mu = float(obs_obj.mean())
            sd = float(obs_obj.std())
            if sd < 1e-12:
                sd = 1.0
            z = (obs_obj - mu) / sd
            means, variances = gp_fit_predict(
                X[obs_idx], z, X[unobserved], lengthscale, cfg.noise_variance
            )
            ei = expected_improvement(means, variances, best=float(z.min()))
            pick = int(unobserved[int(np.argmax(ei))])
        observed[pick] = True
        queried.append(pick)
        best = min(best, float(objective[pick]))
        trace.append(best)

    return BoTrace(
        best_distance_per_round=np.asarray(trace, dtype=np.float64),
        auc=float(np.sum(trace)),
        queried=queried,
        truncated=truncated,
    )
