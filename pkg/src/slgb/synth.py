"""Seeded synthetic tabular generators for desk-scale experiments."""

from __future__ import annotations

import numpy as np

from .data import Attribute, Dataset, NOMINAL, NUMERIC


def _numeric_attrs(k: int) -> list:
    return [Attribute(f"x{i}", NUMERIC) for i in range(k)]


def make_blobs(n: int = 250, n_classes: int = 3, n_features: int = 3,
               spread: float = 1.0, seed: int = 0) -> Dataset:
    """Gaussian blobs, one cluster per class, mildly imbalanced."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-4, 4, size=(n_classes, n_features))
    props = rng.dirichlet(np.full(n_classes, 8.0))
    counts = np.maximum(2, np.round(props * n).astype(int))
    X, y = [], []
    for c in range(n_classes):
        X.append(rng.normal(centers[c], spread, size=(counts[c], n_features)))
        y.extend([c] * counts[c])
    classes = tuple(chr(ord("A") + c) for c in range(n_classes))
    return Dataset(_numeric_attrs(n_features), classes, np.vstack(X), np.array(y))


def make_xor_grid(n: int = 250, cells: int = 2, noise: float = 0.05,
                  seed: int = 0) -> Dataset:
    """Checkerboard over two numeric attributes; parity of cell = class."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(0, 1, size=(n, 2))
    cell = np.floor(X * cells).astype(int)
    y = (cell.sum(axis=1) % 2).astype(int)
    flip = rng.random(n) < noise
    y[flip] = 1 - y[flip]
    return Dataset(_numeric_attrs(2), ("A", "B"), X, y)


def make_rings(n: int = 250, noise: float = 0.08, seed: int = 0) -> Dataset:
    """Two concentric rings; not axis-aligned, so rules need several cuts."""
    rng = np.random.default_rng(seed)
    n_inner = n // 2
    theta = rng.uniform(0, 2 * np.pi, n)
    radius = np.concatenate([
        rng.normal(1.0, noise, n_inner),
        rng.normal(2.0, noise, n - n_inner),
    ])
    X = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
    y = np.concatenate([np.zeros(n_inner, int), np.ones(n - n_inner, int)])
    perm = rng.permutation(n)
    return Dataset(_numeric_attrs(2), ("A", "B"), X[perm], y[perm])


def make_mixed(n: int = 250, seed: int = 0) -> Dataset:
    """Two numeric blobs plus an informative nominal attribute."""
    rng = np.random.default_rng(seed)
    y = (rng.random(n) < 0.45).astype(int)
    centers = np.array([[-1.5, 0.0], [1.5, 0.5]])
    X_num = centers[y] + rng.normal(0, 1.0, size=(n, 2))
    # nominal attribute agrees with the class 80% of the time
    agree = rng.random(n) < 0.8
    codes = np.where(agree, y, rng.integers(0, 3, n))
    X = np.column_stack([X_num, codes.astype(float)])
    attrs = _numeric_attrs(2) + [Attribute("color", NOMINAL, ("red", "green", "blue"))]
    return Dataset(attrs, ("A", "B"), X, y)


GENERATORS = {
    "blobs": make_blobs,
    "xor": make_xor_grid,
    "rings": make_rings,
    "mixed": make_mixed,
}


def make_suite(n_datasets: int = 12, n: int = 250, seed: int = 7) -> list:
    """Named datasets cycling through the generators with distinct seeds."""
    names = list(GENERATORS)
    suite = []
    for i in range(n_datasets):
        gen = names[i % len(names)]
        ds_seed = seed + 101 * i
        suite.append((f"{gen}-{i:02d}", GENERATORS[gen](n=n, seed=ds_seed)))
    return suite
