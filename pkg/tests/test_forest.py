"""Weight-aware random forest: training, inference, determinism."""

import numpy as np
import pytest

from slgb.forest import (ForestConfig, TrainedForest, forest_from_json,
                         predict, predict_proba, train_forest)
from conftest import nominal_dataset, numeric_dataset


def _separable(n=40, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(-2, 0.5, (n // 2, 2)), rng.normal(2, 0.5, (n // 2, 2))])
    y = np.array([0] * (n // 2) + [1] * (n // 2))
    return numeric_dataset(X, y)


def test_training_accuracy_on_separable_data():
    d = _separable()
    m = train_forest(d, np.ones(d.n), ForestConfig(n_trees=20, seed=1))
    assert np.array_equal(predict(m, d.X), d.y)


def test_probability_averaging_fixture():
    # three handmade trees voting A, A, B with (numerically) pure leaves
    big = 1e9
    trees = [{"leaf": [big, 0.0]}, {"leaf": [big, 0.0]}, {"leaf": [0.0, big]}]
    m = TrainedForest(trees, ("A", "B"), [], ForestConfig(n_trees=3))
    proba = predict_proba(m, np.zeros(1))
    assert proba == pytest.approx([2 / 3, 1 / 3], abs=1e-6)


def test_laplace_pure_leaf_below_one():
    d = _separable(n=20)
    m = train_forest(d, np.ones(d.n), ForestConfig(n_trees=5, seed=0))
    proba = predict_proba(m, d.X[0])
    assert proba[0] > 0.5
    assert proba[0] < 1.0  # Laplace smoothing keeps scores off the boundary


def test_determinism_and_seed_sensitivity():
    d = _separable(n=60, seed=3)
    w = np.ones(d.n)
    a = train_forest(d, w, ForestConfig(n_trees=10, seed=7))
    b = train_forest(d, w, ForestConfig(n_trees=10, seed=7))
    c = train_forest(d, w, ForestConfig(n_trees=10, seed=8))
    assert a.trees == b.trees
    assert a.trees != c.trees


def test_bootstrap_respects_weights():
    # all mass on one instance: every resample must be that instance
    d = _separable(n=10)
    w = np.zeros(d.n)
    w[3] = 1.0
    seen = []

    def spy(rng, weights):
        from slgb.forest import _default_bootstrap
        idx = _default_bootstrap(rng, weights)
        seen.append(idx)
        return idx

    train_forest(d, w, ForestConfig(n_trees=4, seed=0), bootstrap=spy)
    assert all((idx == 3).all() for idx in seen)


def test_weight_responsiveness_with_injected_bootstrap():
    # deterministic bootstrap = identity; the trees then see the raw weights'
    # effect only through the resample, so flipping weights flips predictions
    d = numeric_dataset([[0.0], [0.1], [0.9], [1.0]] * 5,
                        [0, 0, 1, 1] * 5)

    def heavy_low(rng, weights):
        return np.where(weights > 0.5)[0].repeat(4)

    w_low = np.array(([1.0, 1.0, 0.0, 0.0] * 5))
    m = train_forest(d, w_low + 1e-9, ForestConfig(n_trees=3, seed=0),
                     bootstrap=lambda rng, w: np.where(w > 0.5)[0].repeat(4))
    # only class-0 instances are resampled: the forest degenerates to class 0
    assert predict(m, np.array([0.95])) == 0
    assert heavy_low is not None


def test_ensemble_variance_shrinks_with_more_trees():
    rng = np.random.default_rng(5)
    X = rng.normal(0, 1.5, (80, 2))
    y = ((X[:, 0] + 0.3 * rng.normal(size=80)) > 0).astype(int)
    d = numeric_dataset(X, y)
    probe = np.array([0.0, 0.0])
    spreads = []
    for n_trees in (1, 10, 100):
        scores = [predict_proba(train_forest(d, np.ones(d.n),
                                             ForestConfig(n_trees=n_trees, seed=s)),
                                probe)[1]
                  for s in range(20)]
        spreads.append(np.std(scores))
    assert spreads[0] > spreads[1] > spreads[2]


def test_degenerate_single_class():
    d = numeric_dataset([[0.0], [1.0]], [1, 1], classes=("A", "B"))
    m = train_forest(d, np.ones(2), ForestConfig(n_trees=5))
    assert m.degenerate_class == 1
    assert predict(m, np.array([0.5])) == 1
    assert predict_proba(m, np.array([0.5])) == pytest.approx([0.0, 1.0])


def test_nominal_splits():
    X = np.array([[0.0], [0.0], [1.0], [1.0], [2.0], [2.0]] * 4)
    y = np.array([0, 0, 1, 1, 0, 0] * 4)
    d = nominal_dataset(X, y, [("u", "v", "w")])
    m = train_forest(d, np.ones(d.n), ForestConfig(n_trees=10, seed=2))
    assert np.array_equal(predict(m, d.X), d.y)


def test_batch_prediction_matches_rowwise():
    d = _separable()
    m = train_forest(d, np.ones(d.n), ForestConfig(n_trees=5, seed=4))
    batch = predict_proba(m, d.X[:5])
    rows = np.vstack([predict_proba(m, x) for x in d.X[:5]])
    assert np.allclose(batch, rows)


def test_json_roundtrip():
    d = _separable()
    m = train_forest(d, np.ones(d.n), ForestConfig(n_trees=5, seed=4))
    m2 = forest_from_json(m.to_json())
    assert np.allclose(predict_proba(m2, d.X), predict_proba(m, d.X))


def test_validation():
    d = _separable()
    with pytest.raises(ValueError):
        train_forest(d, np.ones(d.n - 1))
    with pytest.raises(ValueError):
        train_forest(d, -np.ones(d.n))
    with pytest.raises(ValueError):
        ForestConfig(n_trees=0)
