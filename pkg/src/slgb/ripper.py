"""RIPPER-style decision list: FOIL-gain growth, reduced-error pruning."""

from __future__ import annotations

import numpy as np

from .data import Dataset, NUMERIC
from .rulemodel import Condition, Rule, RuleModel, RIPPER_LIST
from .trees import _check_training_input, _tally


def train_ripper(data: Dataset, weights, min_rule_weight: float = 2.0,
                 prune_folds: int = 3, optimize_iters: int = 2,
                 seed: int = 0) -> RuleModel:
    """Per class (ascending weighted frequency): grow rules greedily on a 2/3
    grow partition, prune on the 1/3 prune partition, then revise the list
    for a fixed number of optimization rounds.
    """
    w = _check_training_input(data, weights)
    if prune_folds < 2:
        raise ValueError("prune_folds must be >= 2")
    rng = np.random.default_rng(seed)
    n_classes = len(data.classes)
    X, y = data.X, data.y

    freq = _tally(y, w, n_classes)
    present = [c for c in range(n_classes) if freq[c] > 0]
    order = sorted(present, key=lambda c: (freq[c], c))

    rules: list = []
    remaining = np.arange(data.n)
    for c in order[:-1]:
        remaining = _learn_class(X, y, w, data.attributes, c, remaining, rules,
                                 min_rule_weight, prune_folds, rng)

    for _ in range(optimize_iters):
        rules = _optimize(X, y, w, data.attributes, rules, min_rule_weight,
                          prune_folds, rng)

    default_class = _default_class(X, y, w, rules, n_classes)
    final = _with_list_stats(X, y, w, rules, default_class, n_classes)
    return RuleModel(RIPPER_LIST, final, default_class, data.classes,
                     data.attributes)


# ---------------------------------------------------------------------------
# Per-class separate and conquer
# ---------------------------------------------------------------------------


def _learn_class(X, y, w, attributes, c, remaining, rules, min_rule_weight,
                 prune_folds, rng):
    while True:
        pos_weight = w[remaining[y[remaining] == c]].sum()
        if pos_weight < min_rule_weight:
            break
        grow_idx, prune_idx = _grow_prune_split(y, remaining, prune_folds, rng)
        conds = _grow_rule(X, y, w, attributes, c, grow_idx)
        if not conds:
            break
        conds = _prune_conditions(X, y, w, c, conds, prune_idx)
        p, n = _pn(X, y, w, c, conds, prune_idx)
        if p + n > 0 and p / (p + n) < 0.5:
            break
        mask = _cover_mask(X, remaining, conds)
        covered = remaining[mask]
        p_all = w[covered[y[covered] == c]].sum()
        if p_all < min_rule_weight:
            break
        rules.append(Rule(tuple(conds), c, 0.0, 1.0))  # stats filled at the end
        remaining = remaining[~mask]
    return remaining


def _grow_prune_split(y, remaining, prune_folds, rng):
    """Stratified seeded split: (folds-1)/folds grow, 1/folds prune."""
    grow, prune = [], []
    for c in np.unique(y[remaining]):
        idx = remaining[y[remaining] == c]
        idx = idx.copy()
        rng.shuffle(idx)
        cut = max(1, int(round(len(idx) * (prune_folds - 1) / prune_folds)))
        grow.extend(idx[:cut])
        prune.extend(idx[cut:])
    return np.array(sorted(grow), dtype=int), np.array(sorted(prune), dtype=int)


def _cover_mask(X, idx, conds):
    mask = np.ones(len(idx), dtype=bool)
    for cond in conds:
        mask &= cond.mask(X[idx])
    return mask


def _pn(X, y, w, c, conds, idx):
    mask = _cover_mask(X, idx, conds)
    covered = idx[mask]
    p = w[covered[y[covered] == c]].sum()
    n = w[covered[y[covered] != c]].sum()
    return float(p), float(n)


def _grow_rule(X, y, w, attributes, c, grow_idx) -> list:
    """Add conditions greedily by weighted FOIL information gain."""
    conds: list = []
    covered = grow_idx.copy()
    while True:
        pos = w[covered[y[covered] == c]].sum()
        neg = w[covered[y[covered] != c]].sum()
        if neg <= 0 or pos <= 0:
            break
        base = np.log2(pos / (pos + neg))
        best = None  # (gain, condition)
        used_nominal = {cond.attr for cond in conds if cond.op == "=="}
        for t, a in enumerate(attributes):
            col = X[covered, t]
            is_pos = y[covered] == c
            wv = w[covered]
            if a.kind == NUMERIC:
                cand = _numeric_gains(col, is_pos, wv, base)
                for gain, op, thr in cand:
                    if best is None or gain > best[0]:
                        best = (gain, Condition(t, op, thr))
            else:
                if t in used_nominal:
                    continue
                for v in range(len(a.values)):
                    sel = col == v
                    p1 = wv[sel & is_pos].sum()
                    if p1 <= 0:
                        continue
                    n1 = wv[sel & ~is_pos].sum()
                    gain = p1 * (np.log2(p1 / (p1 + n1)) - base)
                    if best is None or gain > best[0]:
                        best = (gain, Condition(t, "==", float(v)))
        if best is None or best[0] <= 1e-12:
            break
        conds.append(best[1])
        covered = covered[best[1].mask(X[covered])]
    return conds


def _numeric_gains(col, is_pos, wv, base):
    """Best '<=' and '>' thresholds by FOIL gain over midpoint candidates."""
    order = np.argsort(col, kind="mergesort")
    col_s = col[order]
    pw = np.where(is_pos[order], wv[order], 0.0)
    nw = np.where(is_pos[order], 0.0, wv[order])
    cum_p = np.cumsum(pw)
    cum_n = np.cumsum(nw)
    tot_p, tot_n = cum_p[-1], cum_n[-1]
    distinct = np.nonzero(np.diff(col_s))[0]
    out = []
    best_le = best_gt = None
    for i in distinct:
        thr = (col_s[i] + col_s[i + 1]) / 2.0
        p1, n1 = cum_p[i], cum_n[i]
        if p1 > 0:
            gain = p1 * (np.log2(p1 / (p1 + n1)) - base)
            if best_le is None or gain > best_le[0]:
                best_le = (gain, "<=", thr)
        p1, n1 = tot_p - cum_p[i], tot_n - cum_n[i]
        if p1 > 0:
            gain = p1 * (np.log2(p1 / (p1 + n1)) - base)
            if best_gt is None or gain > best_gt[0]:
                best_gt = (gain, ">", thr)
    if best_le:
        out.append(best_le)
    if best_gt:
        out.append(best_gt)
    return out


def _prune_conditions(X, y, w, c, conds, prune_idx) -> list:
    """Drop a final sequence of conditions maximizing (p - n)/(p + n)."""
    if len(prune_idx) == 0:
        return conds

    def value(k):
        p, n = _pn(X, y, w, c, conds[:k], prune_idx)
        if p + n <= 0:
            return -1.0
        return (p - n) / (p + n)

    best_k = len(conds)
    best_v = value(best_k)
    for k in range(len(conds) - 1, 0, -1):
        v = value(k)
        if v >= best_v:  # prefer the shorter rule on ties
            best_v = v
            best_k = k
    return conds[:best_k]


# ---------------------------------------------------------------------------
# Optimization rounds
# ---------------------------------------------------------------------------


def _list_error(X, y, w, rules, default_class):
    """Total misclassified weight of the decision list over all data."""
    pred = np.full(len(y), -1)
    undecided = np.ones(len(y), dtype=bool)
    for r in rules:
        fire = undecided & r.mask(X)
        pred[fire] = r.consequent
        undecided &= ~fire
    pred[undecided] = default_class
    return float(w[pred != y].sum())


def _optimize(X, y, w, attributes, rules, min_rule_weight, prune_folds, rng):
    n_classes = max(int(y.max()) + 1, 2)
    for i in range(len(rules)):
        c = rules[i].consequent
        # residual data that actually reaches rule i
        reach = np.arange(len(y))
        for r in rules[:i]:
            reach = reach[~r.mask(X[reach])]
        if len(reach) == 0:
            continue
        grow_idx, prune_idx = _grow_prune_split(y, reach, prune_folds, rng)
        replacement = _prune_conditions(
            X, y, w, c, _grow_rule(X, y, w, attributes, c, grow_idx), prune_idx)
        revision_grown = list(rules[i].conditions) + _grow_extra(
            X, y, w, attributes, c, grow_idx, rules[i].conditions)
        revision = _prune_conditions(X, y, w, c, revision_grown, prune_idx)

        default = _default_class(X, y, w, rules, n_classes)
        variants = [rules[i].conditions, tuple(replacement), tuple(revision)]
        errors = []
        for conds in variants:
            cand = rules[:i] + [Rule(conds, c, 0.0, 1.0)] + rules[i + 1:]
            errors.append(_list_error(X, y, w, cand, default))
        best = int(np.argmin(errors))  # argmin keeps the original on ties
        if best != 0 and len(variants[best]) > 0:
            rules[i] = Rule(variants[best], c, 0.0, 1.0)
    return rules


def _grow_extra(X, y, w, attributes, c, grow_idx, existing) -> list:
    covered = grow_idx.copy()
    for cond in existing:
        covered = covered[cond.mask(X[covered])]
    if len(covered) == 0:
        return []
    sub = _grow_rule(X, y, w, attributes, c, covered)
    return sub


def _default_class(X, y, w, rules, n_classes) -> int:
    undecided = np.ones(len(y), dtype=bool)
    for r in rules:
        undecided &= ~r.mask(X)
    if undecided.any():
        tally = _tally(y[undecided], w[undecided], n_classes)
        if tally.sum() > 0:
            return int(np.argmax(tally))
    return int(np.argmax(_tally(y, w, n_classes)))


def _with_list_stats(X, y, w, rules, default_class, n_classes) -> list:
    """Recompute sequential coverage/confidence and append the default rule."""
    out = []
    reach = np.arange(len(y))
    for r in rules:
        mask = _cover_mask(X, reach, r.conditions)
        covered = reach[mask]
        cov = float(w[covered].sum())
        if cov > 0:
            correct = w[covered[y[covered] == r.consequent]].sum()
            conf = float(correct / cov)
        else:
            conf = 1.0
        out.append(Rule(r.conditions, r.consequent, cov, conf))
        reach = reach[~mask]
    if len(reach) > 0:
        cov = float(w[reach].sum())
        correct = w[reach[y[reach] == default_class]].sum()
        conf = float(correct / cov) if cov > 0 else 1.0
    else:
        cov, conf = 0.0, 1.0
    out.append(Rule((), default_class, cov, conf))
    return out
