"""Correlation and nearest-neighbor regression metrics for fingerprints."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateInputError",
    "KnnConfig",
    "cosine_distance_matrix",
    "ged_correlation",
    "knn_mae",
    "knn_predict",
    "pearson",
    "sign_test_pvalue",
    "tanimoto_distance_matrix",
]


class DegenerateInputError(ValueError):
    """An input is constant where variation is required."""


def pearson(xs, ys) -> float:
    """Sample Pearson correlation coefficient in [-1, 1]."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"inputs must be equal-length 1-D, got {x.shape} vs {y.shape}")
    if x.shape[0] < 2:
        raise ValueError("pearson requires at least 2 samples")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt(np.dot(xc, xc)))
    sy = float(np.sqrt(np.dot(yc, yc)))
    if sx == 0.0 or sy == 0.0:
        raise DegenerateInputError("constant input has undefined correlation")
    r = float(np.dot(xc, yc) / (sx * sy))
    return max(-1.0, min(1.0, r))


def ged_correlation(pairs, rep, distance) -> float:
    """Absolute Pearson correlation between pair distances and edit distances.

    ``rep`` maps a molecule to its representation, ``distance`` maps two
    representations to a scalar distance.
    """
    pairs = list(pairs)
    if len(pairs) < 10:
        raise ValueError(f"need at least 10 pairs, got {len(pairs)}")
    dists = [float(distance(rep(p.mol_a), rep(p.mol_b))) for p in pairs]
    geds = [float(p.edit_distance) for p in pairs]
    return abs(pearson(dists, geds))


@dataclass(frozen=True)
class KnnConfig:
    k: int = 5
    distance: str = "cosine"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.distance not in ("cosine", "tanimoto"):
            raise ValueError(f"unknown distance {self.distance!r}")


def cosine_distance_matrix(a, b) -> np.ndarray:
    """1 - cosine similarity between rows of a and rows of b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na = np.linalg.norm(a, axis=1, keepdims=True)
    nb = np.linalg.norm(b, axis=1, keepdims=True)
    na[na == 0.0] = 1.0
    nb[nb == 0.0] = 1.0
    return 1.0 - (a / na) @ (b / nb).T


def tanimoto_distance_matrix(a, b) -> np.ndarray:
    """1 - Tanimoto similarity between rows of boolean bit matrices."""
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    inter = a.astype(np.int64) @ b.astype(np.int64).T
    pops_a = a.sum(axis=1, keepdims=True)
    pops_b = b.sum(axis=1, keepdims=True)
    union = pops_a + pops_b.T - inter
    sim = np.where(union == 0, 1.0, inter / np.maximum(union, 1))
    return 1.0 - sim


def _distance_matrix(test, train, cfg: KnnConfig) -> np.ndarray:
    if cfg.distance == "cosine":
        return cosine_distance_matrix(test, train)
    return tanimoto_distance_matrix(test, train)


def knn_predict(train_x, train_y, test_x, cfg: KnnConfig) -> np.ndarray:
    """Unweighted k-NN mean prediction; distance ties prefer lower index."""
    train_y = np.asarray(train_y, dtype=np.float64)
    if cfg.k > train_y.shape[0]:
        raise ValueError(
            f"k={cfg.k} exceeds training set size {train_y.shape[0]}"
        )
    dists = _distance_matrix(test_x, train_x, cfg)
    order = np.argsort(dists, axis=1, kind="stable")[:, : cfg.k]
    return train_y[order].mean(axis=1)


def knn_mae(train_x, train_y, test_x, test_y, cfg: KnnConfig) -> float:
    """Mean absolute error of k-NN regression on the test set."""
    preds = knn_predict(train_x, train_y, test_x, cfg)
    test_y = np.asarray(test_y, dtype=np.float64)
    return float(np.mean(np.abs(preds - test_y)))


def sign_test_pvalue(successes: int, trials: int) -> float:
    """One-sided sign test: P(X >= successes) for X ~ Binomial(trials, 1/2)."""
    if not (0 <= successes <= trials):
        raise ValueError("successes must lie in 0..trials")
    total = sum(math.comb(trials, s) for s in range(successes, trials + 1))
    return total / (2**trials)
