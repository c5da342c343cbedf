"""Weight-aware random forest supplying the label function f and scores h."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, NUMERIC


@dataclass
class ForestConfig:
    n_trees: int = 100
    attributes_per_split: int | None = None  # default ceil(log2(p)) at train time
    min_leaf_weight: float = 2.0
    max_depth: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.min_leaf_weight <= 0:
            raise ValueError("min_leaf_weight must be positive")


@dataclass
class TrainedForest:
    """Immutable bagged ensemble; trees are nested dicts (JSON-ready)."""

    trees: list
    classes: tuple
    attributes: list
    config: ForestConfig
    degenerate_class: int | None = None  # single-class training input

    def to_json(self) -> dict:
        return {
            "version": 1,
            "classes": list(self.classes),
            "n_trees": len(self.trees),
            "degenerate_class": self.degenerate_class,
            "trees": self.trees,
        }


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _default_bootstrap(rng: np.random.Generator, weights: np.ndarray) -> np.ndarray:
    """Inverse-CDF weighted resample of len(weights) indices, with replacement."""
    cum = np.cumsum(weights)
    u = rng.random(len(weights)) * cum[-1]
    return np.searchsorted(cum, u, side="right").clip(0, len(weights) - 1)


def train_forest(labeled: Dataset, weights, config: ForestConfig | None = None,
                 bootstrap=None) -> TrainedForest:
    """Bagged randomized trees over a weight-proportional bootstrap.

    Each tree trains on a resample drawn with probability proportional to the
    instance weights; resampled instances count with unit weight.  Splits use
    information gain over a random attribute subset.
    """
    config = config or ForestConfig()
    if labeled.n == 0:
        raise ValueError("labeled dataset is empty")
    if not labeled.labeled_mask.all():
        raise ValueError("all labels must be present")
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (labeled.n,) or (weights < 0).any() or weights.sum() <= 0:
        raise ValueError("weights must align with instances, be >= 0 and sum > 0")

    present = np.unique(labeled.y)
    if len(present) == 1:
        return TrainedForest([], labeled.classes, labeled.attributes, config,
                             degenerate_class=int(present[0]))

    p = labeled.p
    k = config.attributes_per_split
    if k is None:
        k = max(1, math.ceil(math.log2(p))) if p > 1 else 1
    k = min(k, p)
    bootstrap = bootstrap or _default_bootstrap

    n_classes = len(labeled.classes)
    rngs = [np.random.default_rng(s) for s in
            np.random.SeedSequence(config.seed).spawn(config.n_trees)]
    trees = []
    for rng in rngs:
        idx = np.asarray(bootstrap(rng, weights))
        X = labeled.X[idx]
        y = labeled.y[idx]
        w = np.ones(len(idx))
        trees.append(_grow(X, y, w, labeled.attributes, n_classes, k,
                           config.min_leaf_weight, config.max_depth, rng, depth=0))
    return TrainedForest(trees, labeled.classes, labeled.attributes, config)


def _tally(y, w, n_classes) -> list:
    t = np.zeros(n_classes)
    np.add.at(t, y, w)
    return t.tolist()


def _grow(X, y, w, attributes, n_classes, k, min_leaf, max_depth, rng, depth):
    tally = _tally(y, w, n_classes)
    total = w.sum()
    if (total < 2 * min_leaf or len(np.unique(y)) == 1
            or (max_depth is not None and depth >= max_depth)):
        return {"leaf": tally}
    cand = rng.choice(len(attributes), size=min(k, len(attributes)), replace=False)
    parent_h = _entropy(np.asarray(tally))
    best = None  # (gain, attr, threshold_or_None)
    for t in np.sort(cand):
        a = attributes[t]
        col = X[:, t]
        if a.kind == NUMERIC:
            split = _best_numeric_split(col, y, w, n_classes, parent_h, min_leaf)
            if split is not None and (best is None or split[0] > best[0]):
                best = (split[0], int(t), split[1])
        else:
            gain = _nominal_gain(col, y, w, n_classes, parent_h, len(a.values), min_leaf)
            if gain is not None and (best is None or gain > best[0]):
                best = (gain, int(t), None)
    if best is None or best[0] <= 1e-12:
        return {"leaf": tally}
    _, t, thr = best
    if thr is not None:
        lo = X[:, t] <= thr
        return {
            "attr": t,
            "thr": float(thr),
            "lo": _grow(X[lo], y[lo], w[lo], attributes, n_classes, k, min_leaf,
                        max_depth, rng, depth + 1),
            "hi": _grow(X[~lo], y[~lo], w[~lo], attributes, n_classes, k, min_leaf,
                        max_depth, rng, depth + 1),
        }
    children = []
    for v in range(len(attributes[t].values)):
        mask = X[:, t] == v
        if mask.any():
            children.append(_grow(X[mask], y[mask], w[mask], attributes, n_classes, k,
                                  min_leaf, max_depth, rng, depth + 1))
        else:
            children.append({"leaf": tally})  # empty branch inherits parent tallies
    return {"attr": t, "children": children}


def _best_numeric_split(col, y, w, n_classes, parent_h, min_leaf):
    order = np.argsort(col, kind="mergesort")
    col_s, y_s, w_s = col[order], y[order], w[order]
    # cumulative class-weight tallies along the sorted column
    onehot = np.zeros((len(y_s), n_classes))
    onehot[np.arange(len(y_s)), y_s] = w_s
    cum = np.cumsum(onehot, axis=0)
    totals = cum[-1]
    total_w = totals.sum()
    distinct = np.nonzero(np.diff(col_s))[0]  # split after position i
    best_gain, best_thr = None, None
    for i in distinct:
        wl = cum[i].sum()
        wr = total_w - wl
        if wl < min_leaf or wr < min_leaf:
            continue
        h = (wl * _entropy(cum[i]) + wr * _entropy(totals - cum[i])) / total_w
        gain = parent_h - h
        if best_gain is None or gain > best_gain:
            best_gain = gain
            best_thr = (col_s[i] + col_s[i + 1]) / 2.0
    if best_gain is None:
        return None
    return best_gain, best_thr


def _nominal_gain(col, y, w, n_classes, parent_h, n_values, min_leaf):
    total_w = w.sum()
    h = 0.0
    occupied = 0
    ok_branches = 0
    for v in range(n_values):
        mask = col == v
        if not mask.any():
            continue
        occupied += 1
        wv = w[mask].sum()
        if wv >= min_leaf:
            ok_branches += 1
        h += wv * _entropy(np.asarray(_tally(y[mask], w[mask], n_classes)))
    if occupied < 2 or ok_branches < 2:
        return None
    return parent_h - h / total_w


# ---------------------------------------------------------------------------
# Inference
# ---------------------------------------------------------------------------


def _route(tree: dict, x: np.ndarray) -> list:
    node = tree
    while "leaf" not in node:
        t = node["attr"]
        if "thr" in node:
            node = node["lo"] if x[t] <= node["thr"] else node["hi"]
        else:
            node = node["children"][int(x[t])]
    return node["leaf"]


def _leaf_distribution(tally) -> np.ndarray:
    t = np.asarray(tally, dtype=float) + 1.0  # Laplace smoothing
    return t / t.sum()


def predict_proba(m: TrainedForest, x) -> np.ndarray:
    """Class-probability vector(s); mean of per-tree leaf distributions."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 2:
        return np.vstack([predict_proba(m, row) for row in x])
    n_classes = len(m.classes)
    if m.degenerate_class is not None:
        out = np.zeros(n_classes)
        out[m.degenerate_class] = 1.0
        return out
    acc = np.zeros(n_classes)
    for tree in m.trees:
        acc += _leaf_distribution(_route(tree, x))
    acc /= len(m.trees)
    return acc / acc.sum()


def predict(m: TrainedForest, x) -> int | np.ndarray:
    """Argmax of predict_proba; ties break to the first-declared class."""
    proba = predict_proba(m, x)
    return int(np.argmax(proba)) if proba.ndim == 1 else np.argmax(proba, axis=1)


def forest_from_json(doc: dict) -> TrainedForest:
    if doc.get("version") != 1:
        raise ValueError("unsupported forest document version")
    return TrainedForest(doc["trees"], tuple(doc["classes"]), [], ForestConfig(),
                         degenerate_class=doc.get("degenerate_class"))
