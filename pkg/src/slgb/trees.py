"""C4.5-style decision tree and PART-style decision list, both weight-aware."""

from __future__ import annotations

import numpy as np
from scipy.stats import norm

from .data import Dataset, NUMERIC
from .rulemodel import Condition, Rule, RuleModel, TREE, PART_LIST


class _Node:
    """Mutable induction node; converted to Rule objects once final."""

    __slots__ = ("attr", "thr", "children", "tally", "is_leaf")

    def __init__(self, tally):
        self.tally = tally
        self.is_leaf = True
        self.attr = None
        self.thr = None
        self.children = None

    @property
    def majority(self) -> int:
        return int(np.argmax(self.tally))

    @property
    def weight(self) -> float:
        return float(self.tally.sum())

    @property
    def errors(self) -> float:
        return self.weight - float(self.tally[self.majority])


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _tally(y, w, n_classes) -> np.ndarray:
    t = np.zeros(n_classes)
    np.add.at(t, y, w)
    return t


def _check_training_input(data: Dataset, weights) -> np.ndarray:
    if data.n == 0:
        raise ValueError("training data is empty")
    if not data.labeled_mask.all():
        raise ValueError("all labels must be present")
    w = np.asarray(weights, dtype=float)
    if w.shape != (data.n,) or (w < 0).any() or w.sum() <= 0:
        raise ValueError("weights must align with instances, be >= 0 and sum > 0")
    # rescale to sum = n so weight-ratio criteria and the absolute minimum
    # leaf weight are both scale-free (unit weights are unchanged)
    return w * (data.n / w.sum())


# ---------------------------------------------------------------------------
# Induction
# ---------------------------------------------------------------------------


def _build(X, y, w, attributes, n_classes, min_leaf) -> _Node:
    node = _Node(_tally(y, w, n_classes))
    total = node.weight
    live = w > 0
    if total < 2 * min_leaf or len(np.unique(y[live])) <= 1:
        return node
    parent_h = _entropy(node.tally)
    best = None  # (gain_ratio, gain, attr, thr)
    for t, a in enumerate(attributes):
        col = X[:, t]
        if a.kind == NUMERIC:
            found = _best_numeric(col, y, w, n_classes, parent_h, min_leaf)
            if found is None:
                continue
            gain, thr, split_info = found
        else:
            found = _nominal(col, y, w, n_classes, parent_h, len(a.values), min_leaf)
            if found is None:
                continue
            gain, split_info = found
            thr = None
        if split_info <= 1e-12:
            continue
        # zero-gain splits stay admissible (pruning collapses useless ones);
        # this lets parity-style structure be found below the root
        ratio = max(gain, 0.0) / split_info
        if best is None or ratio > best[0]:
            best = (ratio, gain, t, thr)
    if best is None:
        return node
    _, _, t, thr = best
    node.is_leaf = False
    node.attr = t
    node.thr = thr
    if thr is not None:
        lo = X[:, t] <= thr
        node.children = [
            _build(X[lo], y[lo], w[lo], attributes, n_classes, min_leaf),
            _build(X[~lo], y[~lo], w[~lo], attributes, n_classes, min_leaf),
        ]
    else:
        node.children = []
        for v in range(len(attributes[t].values)):
            mask = X[:, t] == v
            if mask.any():
                node.children.append(_build(X[mask], y[mask], w[mask], attributes,
                                            n_classes, min_leaf))
            else:
                node.children.append(_Node(node.tally.copy() * 0))
                node.children[-1].tally[node.majority] = 1e-9  # inherit majority
    return node


def _best_numeric(col, y, w, n_classes, parent_h, min_leaf):
    order = np.argsort(col, kind="mergesort")
    col_s, y_s, w_s = col[order], y[order], w[order]
    onehot = np.zeros((len(y_s), n_classes))
    onehot[np.arange(len(y_s)), y_s] = w_s
    cum = np.cumsum(onehot, axis=0)
    totals = cum[-1]
    total_w = totals.sum()
    distinct = np.nonzero(np.diff(col_s))[0]
    best = None
    for i in distinct:
        wl = cum[i].sum()
        wr = total_w - wl
        if wl < min_leaf or wr < min_leaf:
            continue
        h = (wl * _entropy(cum[i]) + wr * _entropy(totals - cum[i])) / total_w
        gain = parent_h - h
        if best is None or gain > best[0]:
            fl, fr = wl / total_w, wr / total_w
            split_info = -(fl * np.log2(fl) + fr * np.log2(fr))
            best = (gain, (col_s[i] + col_s[i + 1]) / 2.0, split_info)
    return best


def _nominal(col, y, w, n_classes, parent_h, n_values, min_leaf):
    total_w = w.sum()
    h = 0.0
    split_info = 0.0
    occupied = 0
    heavy = 0
    for v in range(n_values):
        mask = col == v
        wv = w[mask].sum()
        if wv <= 0:
            continue
        occupied += 1
        if wv >= min_leaf:
            heavy += 1
        frac = wv / total_w
        split_info -= frac * np.log2(frac)
        h += wv * _entropy(_tally(y[mask], w[mask], n_classes))
    if occupied < 2 or heavy < 2:
        return None
    return parent_h - h / total_w, split_info


# ---------------------------------------------------------------------------
# Pessimistic pruning (C4.5-style upper error bound, with subtree raising)
# ---------------------------------------------------------------------------


def _added_errors(n: float, e: float, cf: float) -> float:
    """Extra errors implied by the upper confidence bound of a binomial.

    Follows the classic C4.5 estimate: the one-sided normal-approximation
    upper limit at confidence ``cf`` (lower cf = more pruning), with the
    small-error cases handled by the exact zero-error formula and linear
    interpolation below one error.
    """
    if n <= 0:
        return 0.0
    if e >= n:
        return 0.0
    if e < 1e-9:
        return n * (1.0 - cf ** (1.0 / n))
    if e < 1.0:
        base = n * (1.0 - cf ** (1.0 / n))
        return base + e * (_added_errors(n, 1.0, cf) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = float(norm.isf(cf))
    f = (e + 0.5) / n
    term = z * np.sqrt(f / n - f * f / n + z * z / (4 * n * n))
    r = (f + z * z / (2 * n) + term) / (1.0 + z * z / n)
    return min(r * n, n) - e


def _route_split(node: _Node, X, idx):
    """Partition row indices among a split node's children."""
    parts = []
    if node.thr is not None:
        lo = X[idx, node.attr] <= node.thr
        parts = [idx[lo], idx[~lo]]
    else:
        col = X[idx, node.attr]
        parts = [idx[col == v] for v in range(len(node.children))]
    return parts


def _subtree_error(node: _Node, X, y, w, idx, cf) -> float:
    """Estimated errors of ``node`` on the given rows (re-routed, bottom up)."""
    n = w[idx].sum()
    if n <= 0:
        return 0.0
    if node.is_leaf:
        e = n - w[idx[y[idx] == node.majority]].sum()
        return e + _added_errors(n, e, cf)
    total = 0.0
    for child, part in zip(node.children, _route_split(node, X, idx)):
        total += _subtree_error(child, X, y, w, part, cf)
    return total


def _prune(node: _Node, X, y, w, idx, cf) -> _Node:
    if node.is_leaf:
        return node
    parts = _route_split(node, X, idx)
    node.children = [_prune(c, X, y, w, p, cf) for c, p in zip(node.children, parts)]
    n = w[idx].sum()
    if n <= 0:
        node.is_leaf = True
        node.children = None
        return node
    leaf_e = node.errors + _added_errors(n, node.errors, cf)
    tree_e = sum(_subtree_error(c, X, y, w, p, cf)
                 for c, p in zip(node.children, parts))
    largest = int(np.argmax([c.weight for c in node.children]))
    raise_e = _subtree_error(node.children[largest], X, y, w, idx, cf)
    best = min(leaf_e, tree_e, raise_e + 0.1)  # small bias against raising churn
    if leaf_e <= best + 1e-9:
        node.is_leaf = True
        node.children = None
        node.attr = None
        node.thr = None
        return node
    if raise_e + 0.1 <= tree_e + 1e-9:
        raised = node.children[largest]
        _refit(raised, X, y, w, idx, len(node.tally))
        return raised
    return node


def _refit(node: _Node, X, y, w, idx, n_classes):
    """Recompute tallies after subtree raising re-routes the parent's data."""
    node.tally = _tally(y[idx], w[idx], n_classes)
    if not node.is_leaf:
        for child, part in zip(node.children, _route_split(node, X, idx)):
            _refit(child, X, y, w, part, n_classes)


# ---------------------------------------------------------------------------
# Model extraction
# ---------------------------------------------------------------------------


def _leaf_rules(node: _Node, path: tuple, attributes, out: list):
    if node.is_leaf:
        weight = node.weight
        conf = float(node.tally[node.majority] / weight) if weight > 0 else 1.0
        out.append(Rule(path, node.majority, weight, conf))
        return
    if node.thr is not None:
        _leaf_rules(node.children[0], path + (Condition(node.attr, "<=", node.thr),),
                    attributes, out)
        _leaf_rules(node.children[1], path + (Condition(node.attr, ">", node.thr),),
                    attributes, out)
    else:
        for v, child in enumerate(node.children):
            _leaf_rules(child, path + (Condition(node.attr, "==", float(v)),),
                        attributes, out)


def train_c45(data: Dataset, weights, min_leaf_weight: float = 2.0,
              confidence_factor: float = 0.25) -> RuleModel:
    """Top-down induction by weighted gain ratio with pessimistic pruning."""
    w = _check_training_input(data, weights)
    root = _build(data.X, data.y, w, data.attributes, len(data.classes),
                  min_leaf_weight)
    idx = np.arange(data.n)
    root = _prune(root, data.X, data.y, w, idx, confidence_factor)
    rules: list = []
    _leaf_rules(root, (), data.attributes, rules)
    return RuleModel(TREE, rules, root.majority, data.classes, data.attributes)


# ---------------------------------------------------------------------------
# PART
# ---------------------------------------------------------------------------


def train_part(data: Dataset, weights, min_leaf_weight: float = 2.0,
               confidence_factor: float = 0.25) -> RuleModel:
    """Separate-and-conquer: repeatedly prune a C4.5 tree on the residual data
    and turn its best leaf (highest coverage x confidence) into a rule."""
    w = _check_training_input(data, weights)
    n_classes = len(data.classes)
    remaining = np.arange(data.n)
    rules: list = []
    overall_majority = int(np.argmax(_tally(data.y, w, n_classes)))

    while len(remaining) > 0 and w[remaining].sum() >= 2 * min_leaf_weight:
        X_r, y_r, w_r = data.X[remaining], data.y[remaining], w[remaining]
        if len(np.unique(y_r)) == 1:
            break
        root = _build(X_r, y_r, w_r, data.attributes, n_classes, min_leaf_weight)
        root = _prune(root, X_r, y_r, w_r, np.arange(len(remaining)),
                      confidence_factor)
        if root.is_leaf:
            break
        leaves: list = []
        _leaf_rules(root, (), data.attributes, leaves)
        leaves = [r for r in leaves if r.coverage > 0]
        best = max(leaves, key=lambda r: (r.coverage * r.confidence, -len(r.conditions)))
        covered = best.mask(data.X[remaining])
        if not covered.any():
            break
        rules.append(best)
        remaining = remaining[~covered]

    if len(remaining) > 0:
        tally = _tally(data.y[remaining], w[remaining], n_classes)
        default_class = int(np.argmax(tally))
        cov = float(tally.sum())
        conf = float(tally[default_class] / cov) if cov > 0 else 1.0
    else:
        default_class = overall_majority
        cov, conf = 0.0, 1.0
    rules.append(Rule((), default_class, cov, conf))
    return RuleModel(PART_LIST, rules, default_class, data.classes, data.attributes)
