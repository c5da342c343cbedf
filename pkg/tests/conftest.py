"""Shared builders and independent oracles used across the test modules."""

import math

import numpy as np
import pytest

from slgb.data import Attribute, Dataset, NOMINAL, NUMERIC


def numeric_dataset(X, y, classes=("A", "B")):
    X = np.asarray(X, dtype=float)
    attrs = [Attribute(f"x{j}", NUMERIC) for j in range(X.shape[1])]
    return Dataset(attrs, tuple(classes), X, np.asarray(y))


def nominal_dataset(X, y, domains, classes=("A", "B")):
    attrs = [Attribute(f"a{j}", NOMINAL, tuple(dom)) for j, dom in enumerate(domains)]
    return Dataset(attrs, tuple(classes), np.asarray(X, dtype=float), np.asarray(y))


# ---------------------------------------------------------------------------
# Brute-force rough-set oracle, written independently of the library:
# explicit loops over pairs and literal set definitions.
# ---------------------------------------------------------------------------


def oracle_distance(d, i, j, weights):
    total = 0.0
    for t, a in enumerate(d.attributes):
        if a.kind == NUMERIC:
            rho = (d.X[i, t] - d.X[j, t]) ** 2
        else:
            rho = 0.0 if d.X[i, t] == d.X[j, t] else 1.0
        total += weights[t] * rho
    return math.sqrt(total / sum(weights))


def oracle_similarity_sets(d, weights, epsilon):
    sims = []
    for i in range(d.n):
        s = set()
        for j in range(d.n):
            if i == j or 1.0 - oracle_distance(d, i, j, weights) >= epsilon:
                s.add(j)
        sims.append(s)
    return sims


def oracle_regions(d, sims, c):
    concept = {i for i in range(d.n) if d.y[i] == c}
    lower = {i for i in range(d.n) if sims[i] <= concept}
    upper = {i for i in range(d.n) if sims[i] & concept}
    positive = lower
    boundary = upper - lower
    negative = set(range(d.n)) - upper
    return positive, boundary, negative


def oracle_memberships(sims, i, regions):
    out = []
    for region in regions:
        if not region:
            out.append(0.0)
        else:
            out.append(len(sims[i] & region) / len(region))
    return tuple(out)


def oracle_rst_weight(mu_p, mu_b, mu_n):
    z = mu_p + 0.5 * mu_b - mu_n
    return 1.0 / (1.0 + math.exp(-z))


def oracle_info_gain_weights(d, bins=10):
    """Per-attribute information gain, computed by literal counting."""

    def entropy(labels):
        h = 0.0
        for c in set(labels):
            p = labels.count(c) / len(labels)
            h -= p * math.log2(p)
        return h

    y = [int(v) for v in d.y]
    gains = []
    for t, a in enumerate(d.attributes):
        col = list(d.X[:, t])
        if a.kind == NUMERIC:
            qs = np.quantile(col, np.linspace(0, 1, bins + 1)[1:-1])
            codes = [int(np.searchsorted(qs, v, side="right")) for v in col]
        else:
            codes = [int(v) for v in col]
        cond = 0.0
        for v in set(codes):
            sub = [y[i] for i in range(len(y)) if codes[i] == v]
            cond += len(sub) / len(y) * entropy(sub)
        gains.append(max(0.0, entropy(y) - cond))
    return gains


def random_universe(rng, n_max=30):
    """Small random mixed-attribute labeled dataset, normalized numerics."""
    n = int(rng.integers(5, n_max + 1))
    n_classes = int(rng.integers(2, 4))
    n_num = int(rng.integers(0, 3))
    n_nom = int(rng.integers(0 if n_num else 1, 3))
    attrs = []
    cols = []
    for j in range(n_num):
        attrs.append(Attribute(f"x{j}", NUMERIC))
        cols.append(np.round(rng.random(n), 2))
    for j in range(n_nom):
        k = int(rng.integers(2, 4))
        attrs.append(Attribute(f"a{j}", NOMINAL, tuple(f"v{u}" for u in range(k))))
        cols.append(rng.integers(0, k, n).astype(float))
    X = np.column_stack(cols)
    y = rng.integers(0, n_classes, n)
    while len(np.unique(y)) < 2:
        y = rng.integers(0, n_classes, n)
    classes = tuple(chr(ord("A") + c) for c in range(n_classes))
    return Dataset(attrs, classes, X, y)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
