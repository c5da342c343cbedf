"""Weighting of the enlarged training set: none, confidence (CONF), RST."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, normalize_numeric
from .forest import TrainedForest, predict_proba
from .rough import HeomParams, build_similarity_structure, region_memberships

NONE = "none"
CONF = "conf"
RST = "rst"
AMENDING_KINDS = (NONE, CONF, RST)


@dataclass
class WeightedEnlargedSet:
    """Labeled originals plus self-labeled instances, with per-instance weights."""

    data: Dataset
    weights: np.ndarray
    self_labeled: np.ndarray  # bool flag per instance
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if len(self.weights) != self.data.n or (self.weights < 0).any():
            raise ValueError("weights must align with instances and be >= 0")


def balance_weights(labeled: Dataset) -> np.ndarray:
    """Class-balance weights: minority count over own-class count."""
    if not labeled.labeled_mask.all():
        raise ValueError("balance_weights needs a fully labeled dataset")
    counts = labeled.class_counts()
    minority = counts[counts > 0].min()
    return (minority / counts[labeled.y]).astype(float)


def conf_weights(forest: TrainedForest, unlabeled: Dataset) -> tuple:
    """Self-labels and confidence weights: f(u) and h(u, f(u))."""
    if unlabeled.n == 0:
        return np.empty(0, dtype=int), np.empty(0)
    proba = predict_proba(forest, unlabeled.X)
    labels = np.argmax(proba, axis=1)
    weights = proba[np.arange(len(labels)), labels]
    return labels.astype(int), weights.astype(float)


def rst_weights(enlarged: Dataset, params: HeomParams) -> np.ndarray:
    """Inclusion-degree weights over the full enlarged set.

    For each instance, the memberships to the positive/boundary/negative
    regions of its own label feed a logistic squashing; applies to both
    originally labeled and self-labeled instances.
    """
    if not enlarged.labeled_mask.all():
        raise ValueError("rst_weights needs the fully self-labeled enlarged set")
    structure = build_similarity_structure(enlarged, params)
    z = np.empty(enlarged.n)
    for i in range(enlarged.n):
        mu_p, mu_b, mu_n = region_memberships(structure, i, int(enlarged.y[i]))
        z[i] = mu_p + 0.5 * mu_b - mu_n
    return 1.0 / (1.0 + np.exp(-z))


def concat_datasets(a: Dataset, b: Dataset) -> Dataset:
    if len(a.attributes) != len(b.attributes) or a.classes != b.classes:
        raise ValueError("datasets do not share a schema")
    return Dataset(a.attributes, a.classes,
                   np.vstack([a.X, b.X]), np.concatenate([a.y, b.y]))


def apply_amending(kind: str, labeled: Dataset, unlabeled: Dataset,
                   forest: TrainedForest, params: HeomParams | None = None,
                   combine: str = "replace") -> WeightedEnlargedSet:
    """Build the weighted enlarged set per the chosen amending strategy.

    NONE keeps balance weights on originals and unit weight on self-labeled
    instances; CONF uses the forest's confidence for self-labeled ones; RST
    re-weights the entire enlarged set from inclusion degrees.  ``combine``
    may be "multiply" to blend RST weights with the prior ones instead of
    replacing them.
    """
    if kind not in AMENDING_KINDS:
        raise ValueError(f"unknown amending kind {kind!r}")
    bw = balance_weights(labeled)
    labels, cw = conf_weights(forest, unlabeled)
    self_part = Dataset(unlabeled.attributes, unlabeled.classes,
                        unlabeled.X.copy(), labels) if unlabeled.n else unlabeled
    enlarged = concat_datasets(labeled, self_part) if unlabeled.n else labeled
    flags = np.concatenate([np.zeros(labeled.n, bool), np.ones(unlabeled.n, bool)])

    notes = []
    if unlabeled.n:
        got = np.bincount(labels, minlength=len(labeled.classes))
        for c in np.where(got == 0)[0]:
            notes.append(f"class {labeled.classes[c]!r} received no self-labels")

    if kind == NONE:
        weights = np.concatenate([bw, np.ones(unlabeled.n)])
    elif kind == CONF:
        weights = np.concatenate([bw, cw])
    else:
        normalized = normalize_numeric(enlarged)
        weights = rst_weights(normalized, params or HeomParams())
        if combine == "multiply":
            weights = weights * np.concatenate([bw, np.ones(unlabeled.n)])
    return WeightedEnlargedSet(enlarged, weights, flags, notes)
