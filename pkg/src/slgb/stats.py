"""Nonparametric test battery: Friedman, Wilcoxon signed-rank, Holm correction."""

from __future__ import annotations

import csv
import io

import numpy as np
from scipy.stats import chi2, norm


def _midranks(values: np.ndarray) -> np.ndarray:
    """Average ranks (1-based) with ties sharing their midrank."""
    values = np.asarray(values, dtype=float)
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values))
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def friedman_test(m: np.ndarray) -> tuple:
    """Friedman two-way analysis by ranks with midrank ties.

    Rows are datasets, columns algorithm configurations.  Returns the
    tie-corrected chi-square statistic and its upper-tail p-value with k-1
    degrees of freedom.  Fully tied data yields (0, 1).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] < 2 or m.shape[1] < 2:
        raise ValueError("score matrix needs >= 2 rows and >= 2 columns")
    n, k = m.shape
    ranks = np.vstack([_midranks(row) for row in m])
    rank_sums = ranks.sum(axis=0)
    stat = 12.0 / (n * k * (k + 1)) * float((rank_sums**2).sum()) - 3.0 * n * (k + 1)
    ties = 0.0
    for row in m:
        _, counts = np.unique(row, return_counts=True)
        ties += float((counts**3 - counts).sum())
    correction = 1.0 - ties / (n * k * (k**2 - 1))
    if correction <= 0:
        return 0.0, 1.0
    stat /= correction
    stat = max(0.0, stat)
    return float(stat), float(chi2.sf(stat, k - 1))


def wilcoxon_signed_rank(a, b) -> tuple:
    """Two-sided Wilcoxon signed-rank test.

    Zero differences are dropped and tied absolute differences midranked.
    Exact enumeration is used for up to 20 nonzero differences, otherwise a
    normal approximation with tie and continuity corrections.  Returns
    (R_plus, R_minus, p_value).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("need two equal-length vectors")
    if len(a) < 5:
        raise ValueError("need at least 5 pairs")
    d = a - b
    d = d[d != 0]
    n = len(d)
    if n == 0:
        return 0.0, 0.0, 1.0
    ranks = _midranks(np.abs(d))
    r_plus = float(ranks[d > 0].sum())
    r_minus = float(ranks[d < 0].sum())
    if n <= 20:
        p = _exact_two_sided(ranks, r_plus)
    else:
        total = n * (n + 1) / 2.0
        mu = total / 2.0
        _, counts = np.unique(np.abs(d), return_counts=True)
        tie_term = float((counts**3 - counts).sum()) / 48.0
        sigma2 = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term
        if sigma2 <= 0:
            return r_plus, r_minus, 1.0
        diff = r_plus - mu
        cc = 0.5 * np.sign(diff)
        z = (diff - cc) / np.sqrt(sigma2)
        p = min(1.0, 2.0 * float(norm.sf(abs(z))))
    return r_plus, r_minus, p


def _exact_two_sided(ranks: np.ndarray, r_plus: float) -> float:
    """Exact two-sided p via the full distribution of the positive rank sum."""
    doubled = np.rint(ranks * 2).astype(int)  # midranks are multiples of 1/2
    total = int(doubled.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: len(counts) - r]
        counts = counts + shifted
    counts /= counts.sum()
    w = int(round(r_plus * 2))
    lower = counts[: w + 1].sum()
    upper = counts[w:].sum()
    return float(min(1.0, 2.0 * min(lower, upper)))


def holm_correction(p_values, alpha: float = 0.05) -> tuple:
    """Holm step-down adjusted p-values (original order) and reject flags."""
    p = np.asarray(p_values, dtype=float)
    if ((p < 0) | (p > 1)).any():
        raise ValueError("p-values must be in [0, 1]")
    m = len(p)
    order = np.argsort(p, kind="mergesort")
    adjusted = np.empty(m)
    running = 0.0
    for i, idx in enumerate(order):
        running = max(running, min(1.0, (m - i) * p[idx]))
        adjusted[idx] = running
    reject = adjusted <= alpha
    return adjusted, reject


# ---------------------------------------------------------------------------
# Score-matrix CSV interface (appendix-style tables)
# ---------------------------------------------------------------------------


def read_score_csv(source) -> tuple:
    """Read a score matrix: header = config names, first column = dataset name.

    Returns (matrix, config_names, dataset_names).
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 3:
        raise ValueError("score matrix needs a header and >= 2 data rows")
    names = [c.strip() for c in rows[0][1:]]
    datasets, values = [], []
    for r in rows[1:]:
        datasets.append(r[0])
        values.append([float(c) for c in r[1:]])
    return np.asarray(values), names, datasets


def test_battery(matrix: np.ndarray, names: list, alpha: float = 0.05) -> dict:
    """Friedman test plus all-pairs Wilcoxon with Holm correction.

    Mirrors the appendix table layout: one row per pair with R-, R+, raw and
    corrected p, and the step-down decision.
    """
    matrix = np.asarray(matrix, dtype=float)
    stat, fried_p = friedman_test(matrix)
    pairs, raws, rplus, rminus = [], [], [], []
    k = matrix.shape[1]
    # the signed-rank test needs >= 5 pairs; with fewer rows report Friedman only
    k = 0 if matrix.shape[0] < 5 else k
    for i in range(k):
        for j in range(i + 1, k):
            rp, rm, p = wilcoxon_signed_rank(matrix[:, i], matrix[:, j])
            pairs.append((names[i], names[j]))
            rplus.append(rp)
            rminus.append(rm)
            raws.append(p)
    adjusted, reject = holm_correction(raws, alpha) if raws else (np.empty(0), np.empty(0, bool))
    return {
        "friedman": {"statistic": stat, "p_value": fried_p},
        "alpha": alpha,
        "pairs": [
            {
                "pair": f"{x} vs. {y}",
                "r_minus": rm,
                "r_plus": rp,
                "p_value": p,
                "holm_p": float(ap),
                "reject": bool(rj),
            }
            for (x, y), rm, rp, p, ap, rj in zip(pairs, rminus, rplus, raws, adjusted, reject)
        ],
    }
