"""Rough-set machinery: HEOM dissimilarity, similarity classes and regions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, NUMERIC


@dataclass
class HeomParams:
    """Attribute weights and similarity threshold for the HEOM relation.

    ``attribute_weights`` are typically per-attribute information gains; when
    None, they are computed from the dataset the structure is built over.
    """

    attribute_weights: np.ndarray | None = None
    epsilon: float = 0.98

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must be in (0, 1]")
        if self.attribute_weights is not None:
            w = np.asarray(self.attribute_weights, dtype=float)
            if (w < 0).any():
                raise ValueError("attribute weights must be non-negative")
            if w.sum() <= 0:
                raise ValueError("attribute weights must not be all zero")
            self.attribute_weights = w


@dataclass
class SimilarityStructure:
    """Similarity classes plus per-class positive/boundary/negative regions.

    ``similar`` is the boolean n-by-n relation matrix; ``positive`` etc. map a
    class code to a sorted index array.
    """

    n: int
    classes: tuple
    similar: np.ndarray
    positive: dict
    boundary: dict
    negative: dict

    def similarity_class(self, i: int) -> np.ndarray:
        return np.where(self.similar[i])[0]

    def to_json(self) -> dict:
        return {
            "version": 1,
            "n": self.n,
            "classes": list(self.classes),
            "regions": {
                str(c): {
                    "positive": self.positive[k].tolist(),
                    "boundary": self.boundary[k].tolist(),
                    "negative": self.negative[k].tolist(),
                }
                for k, c in enumerate(self.classes)
            },
        }


def heom(x1: np.ndarray, x2: np.ndarray, params: HeomParams, kinds: list) -> float:
    """HEOM dissimilarity between two normalized rows.

    ``kinds`` lists each attribute's kind; nominal attributes contribute 0/1
    overlap, numeric ones the squared difference of normalized values.
    """
    w = params.attribute_weights
    if w is None:
        raise ValueError("heom needs explicit attribute weights")
    num = 0.0
    for t, kind in enumerate(kinds):
        if kind == NUMERIC:
            rho = (x1[t] - x2[t]) ** 2
        else:
            rho = 0.0 if x1[t] == x2[t] else 1.0
        num += w[t] * rho
    return float(np.sqrt(num / w.sum()))


def pairwise_heom(d: Dataset, params: HeomParams) -> np.ndarray:
    """Full n-by-n HEOM distance matrix over a normalized dataset."""
    w = params.attribute_weights
    if w is None:
        w = attribute_information_gain(d)
        if w.sum() <= 0:
            w = np.ones(d.p)  # degenerate universe: fall back to uniform
    w = np.asarray(w, dtype=float)
    n = d.n
    acc = np.zeros((n, n))
    for t, a in enumerate(d.attributes):
        if w[t] == 0:
            continue
        col = d.X[:, t]
        if a.kind == NUMERIC:
            rho = (col[:, None] - col[None, :]) ** 2
        else:
            rho = (col[:, None] != col[None, :]).astype(float)
        acc += w[t] * rho
    return np.sqrt(acc / w.sum())


def attribute_information_gain(d: Dataset, bins: int = 10) -> np.ndarray:
    """Information gain H(Y) - H(Y|a_t) per attribute, in bits.

    Numeric attributes are discretized into equal-frequency bins for this
    computation only.
    """
    if not d.labeled_mask.all():
        raise ValueError("information gain needs a fully labeled dataset")
    y = d.y
    hy = _entropy(np.bincount(y, minlength=len(d.classes)))
    gains = np.empty(d.p)
    for t, a in enumerate(d.attributes):
        col = d.X[:, t]
        if a.kind == NUMERIC:
            codes = _equal_frequency_bins(col, bins)
        else:
            codes = col.astype(int)
        cond = 0.0
        for v in np.unique(codes):
            mask = codes == v
            frac = mask.mean()
            cond += frac * _entropy(np.bincount(y[mask], minlength=len(d.classes)))
        gains[t] = max(0.0, hy - cond)
    return gains


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _equal_frequency_bins(col: np.ndarray, bins: int) -> np.ndarray:
    col = np.where(np.isnan(col), np.nanmean(col) if not np.isnan(col).all() else 0.0, col)
    qs = np.quantile(col, np.linspace(0, 1, bins + 1)[1:-1])
    return np.searchsorted(qs, col, side="right")


def build_similarity_structure(d: Dataset, params: HeomParams) -> SimilarityStructure:
    """Similarity classes by 1 - HEOM >= epsilon, plus per-class regions."""
    if not d.labeled_mask.all():
        raise ValueError("similarity structure needs a fully labeled dataset")
    dist = pairwise_heom(d, params)
    similar = (1.0 - dist) >= params.epsilon
    np.fill_diagonal(similar, True)  # delta(x, x) = 0 regardless of rounding
    n = d.n
    universe = np.arange(n)
    positive, boundary, negative = {}, {}, {}
    for c in range(len(d.classes)):
        concept = d.y == c
        # lower approx: similarity class entirely inside the concept
        lower = ~(similar & ~concept[None, :]).any(axis=1)
        # upper approx: similarity class touches the concept
        upper = (similar & concept[None, :]).any(axis=1)
        positive[c] = universe[lower]
        boundary[c] = universe[upper & ~lower]
        negative[c] = universe[~upper]
    return SimilarityStructure(n, d.classes, similar, positive, boundary, negative)


def region_memberships(s: SimilarityStructure, i: int, c: int) -> tuple:
    """Inclusion degrees of instance i's similarity class in class c's regions.

    Empty regions yield membership 0.
    """
    if not 0 <= c < len(s.classes):
        raise ValueError(f"unknown class code {c}")
    sim = s.similar[i]

    def degree(region):
        if len(region) == 0:
            return 0.0
        return float(sim[region].sum()) / len(region)

    return degree(s.positive[c]), degree(s.boundary[c]), degree(s.negative[c])
