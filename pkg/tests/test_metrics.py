import numpy as np
import pytest

from hyperfp.metrics import (
    DegenerateInputError,
    KnnConfig,
    cosine_distance_matrix,
    ged_correlation,
    knn_mae,
    knn_predict,
    pearson,
    sign_test_pvalue,
    tanimoto_distance_matrix,
)
from hyperfp.molgraph import parse_smiles
from hyperfp.perturb import GedPair, graph_signature


def brute_force_knn(train_x, train_y, test_x, k, dist_fn):
    """Independent k-NN oracle: explicit sort by (distance, index)."""
    preds = []
    for t in test_x:
        scored = sorted(
            (dist_fn(t, x), i) for i, x in enumerate(train_x)
        )
        preds.append(np.mean([train_y[i] for _, i in scored[:k]]))
    return np.array(preds)


# ------------------------------------------------------------------ pearson


def test_pearson_affine():
    xs = [0.0, 1.0, 2.0, 5.0]
    assert pearson(xs, [2 * x + 3 for x in xs]) == pytest.approx(1.0)
    assert pearson(xs, [-x for x in xs]) == pytest.approx(-1.0)


def test_pearson_hand_value():
    assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5)


def test_pearson_degenerate():
    with pytest.raises(DegenerateInputError):
        pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_pearson_shape_guards():
    with pytest.raises(ValueError):
        pearson([1.0], [2.0])
    with pytest.raises(ValueError):
        pearson([1.0, 2.0], [1.0, 2.0, 3.0])


# ---------------------------------------------------------- ged_correlation


def make_pairs():
    seeds = ["CCO", "CCC", "CCN", "CCCC", "CC(C)C", "OCCO"]
    descendants = ["CCN", "CCO", "CCC", "CCCO", "CC(C)O", "OCCN"]
    pairs = []
    for k, (a, b) in enumerate(zip(seeds, descendants)):
        pairs.append(GedPair(parse_smiles(a), parse_smiles(b), (k % 3) + 1))
        pairs.append(GedPair(parse_smiles(b), parse_smiles(a), (k % 4) + 1))
    return pairs


def test_ged_correlation_oracle_representation():
    pairs = make_pairs()
    table = {
        (graph_signature(p.mol_a), graph_signature(p.mol_b)): float(p.edit_distance)
        for p in pairs
    }
    corr = ged_correlation(
        pairs,
        rep=graph_signature,
        distance=lambda a, b: table[(a, b)],
    )
    assert corr == pytest.approx(1.0)


def test_ged_correlation_needs_ten_pairs():
    with pytest.raises(ValueError):
        ged_correlation(make_pairs()[:5], rep=lambda m: m, distance=lambda a, b: 0.0)


def test_ged_correlation_degenerate_distance():
    with pytest.raises(DegenerateInputError):
        ged_correlation(make_pairs(), rep=lambda m: m, distance=lambda a, b: 1.0)


# ---------------------------------------------------------------- distances


def test_cosine_distance_matrix():
    a = np.array([[1.0, 0.0], [0.0, 2.0]])
    d = cosine_distance_matrix(a, a)
    assert np.allclose(np.diag(d), 0.0)
    assert d[0, 1] == pytest.approx(1.0)


def test_tanimoto_distance_matrix():
    a = np.array([[1, 1, 0, 0], [1, 0, 1, 0]], dtype=bool)
    d = tanimoto_distance_matrix(a, a)
    assert np.allclose(np.diag(d), 0.0)
    assert d[0, 1] == pytest.approx(1.0 - 1.0 / 3.0)


# ---------------------------------------------------------------------- knn


def test_knn_exact_match_k1():
    train = np.array([[1.0, 0.0], [0.0, 1.0]])
    ys = np.array([3.0, 7.0])
    cfg = KnnConfig(k=1)
    pred = knn_predict(train, ys, np.array([[1.0, 0.0]]), cfg)
    assert pred[0] == pytest.approx(3.0)
    assert knn_mae(train, ys, np.array([[1.0, 0.0]]), [5.0], cfg) == pytest.approx(2.0)


def test_knn_constant_labels():
    rng = np.random.default_rng(0)
    train = rng.standard_normal((10, 4))
    test = rng.standard_normal((4, 4))
    cfg = KnnConfig(k=3)
    assert knn_mae(train, np.full(10, 2.5), test, np.full(4, 2.5), cfg) == 0.0


def test_knn_tie_break_low_index():
    # three training points equidistant from the query
    train = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    ys = np.array([1.0, 2.0, 3.0])
    query = np.array([[0.0, 0.0]])
    # all cosine distances are 1 (zero query vector): first k indices win
    pred = knn_predict(train, ys, query, KnnConfig(k=2))
    assert pred[0] == pytest.approx(1.5)


def test_knn_matches_brute_force_oracle():
    rng = np.random.default_rng(42)
    train = rng.standard_normal((20, 8))
    test = rng.standard_normal((7, 8))
    ys = rng.uniform(0, 10, 20)

    def cos_dist(a, b):
        return 1.0 - float(
            np.dot(a, b) / (np.linalg.norm(a) * np.linalg.norm(b))
        )

    cfg = KnnConfig(k=5)
    expected = brute_force_knn(train, ys, test, 5, cos_dist)
    assert np.allclose(knn_predict(train, ys, test, cfg), expected)


def test_knn_k_too_large():
    with pytest.raises(ValueError):
        knn_predict(np.zeros((3, 2)), np.zeros(3), np.zeros((1, 2)), KnnConfig(k=4))


def test_knn_config_guards():
    with pytest.raises(ValueError):
        KnnConfig(k=0)
    with pytest.raises(ValueError):
        KnnConfig(distance="euclid")


# ---------------------------------------------------------------- sign test


def test_sign_test_exact_values():
    assert sign_test_pvalue(10, 10) == pytest.approx(1.0 / 1024.0)
    assert sign_test_pvalue(9, 10) == pytest.approx(11.0 / 1024.0)
    assert sign_test_pvalue(0, 10) == pytest.approx(1.0)
    assert sign_test_pvalue(8, 10) > 0.05
    assert sign_test_pvalue(9, 10) < 0.05
