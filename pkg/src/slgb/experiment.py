"""Experiment harness: ratio sweeps, grid studies, report assembly."""

from __future__ import annotations

import csv
import json
import zlib
from dataclasses import dataclass, field, replace

import numpy as np

from .amending import apply_amending, balance_weights
from .data import Dataset, make_grid_split, make_split
from .forest import ForestConfig, train_forest
from .metrics import SimplicityParams, confusion_matrix, accuracy, kappa, \
    relative_growth, simplicity, utility
from .pipeline import SlgbConfig, _train_whitebox
from .rulemodel import count_rules, predict_rules
from .stats import test_battery

CELL_COLUMNS = [
    "dataset", "ratio", "fold", "config", "cell_seed", "status",
    "kappa", "accuracy", "rules", "baseline_kappa", "baseline_rules",
    "growth", "simplicity", "utility", "error",
]


@dataclass
class ExperimentConfig:
    datasets: list  # (name, Dataset) pairs
    configs: list  # SlgbConfig instances
    ratios: tuple = (0.1, 0.2, 0.3, 0.4)
    folds: int = 10
    simplicity_params: SimplicityParams = field(default_factory=SimplicityParams)
    alpha: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError("folds must be >= 2")
        if any(not 0 < r < 1 for r in self.ratios):
            raise ValueError("ratios must lie in (0, 1)")


@dataclass
class ExperimentReport:
    kind: str
    cells: list
    aggregates: dict
    stats: dict


def cell_seed(*parts) -> int:
    """Stable per-cell seed from the cell descriptor."""
    key = "|".join(str(p) for p in parts)
    return zlib.crc32(key.encode())


def _evaluate(model, baseline, test: Dataset, simp: SimplicityParams,
              alpha: float) -> dict:
    n_classes = len(test.classes)
    pred = predict_rules(model, test.X)
    cm = confusion_matrix(test.y, pred, n_classes)
    base_pred = predict_rules(baseline, test.X)
    base_cm = confusion_matrix(test.y, base_pred, n_classes)
    n_rules = count_rules(model)
    k = kappa(cm)
    simp_v = simplicity(n_rules, simp)
    return {
        "kappa": k,
        "accuracy": accuracy(cm),
        "rules": n_rules,
        "baseline_kappa": kappa(base_cm),
        "baseline_rules": count_rules(baseline),
        "growth": relative_growth(n_rules, count_rules(baseline)),
        "simplicity": simp_v,
        "utility": utility(k, simp_v, alpha),
    }


def _fit_cell_configs(split, configs, seed, simp, alpha):
    """Fit every config on one split, sharing forests and baselines.

    The forest (and therefore the self-labels) depends only on the forest
    settings, and the labeled-only baseline only on the white box; both are
    reused across the amending variants.
    """
    bw = balance_weights(split.labeled)
    forests = {}
    baselines = {}
    out = []
    for cfg in configs:
        fkey = (cfg.forest.n_trees, cfg.forest.attributes_per_split,
                cfg.forest.min_leaf_weight, cfg.forest.max_depth)
        if fkey not in forests:
            forests[fkey] = train_forest(split.labeled, bw,
                                         replace(cfg.forest, seed=seed))
        wkey = (cfg.whitebox, tuple(sorted(cfg.whitebox_params.items())))
        if wkey not in baselines:
            baselines[wkey] = _train_whitebox(cfg.whitebox, split.labeled, bw,
                                              cfg.whitebox_params, seed)
        enlarged = apply_amending(cfg.amending, split.labeled, split.unlabeled,
                                  forests[fkey], cfg.heom)
        surrogate = _train_whitebox(cfg.whitebox, enlarged.data,
                                    enlarged.weights, cfg.whitebox_params, seed)
        out.append((cfg, _evaluate(surrogate, baselines[wkey], split.test,
                                   simp, alpha)))
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Cross-validated ratio sweep over every (dataset, ratio, fold, config)."""
    cells = []
    for name, d in cfg.datasets:
        for ratio in cfg.ratios:
            for fold in range(cfg.folds):
                seed = cell_seed(name, ratio, fold, cfg.seed)
                base_row = {"dataset": name, "ratio": ratio, "fold": fold,
                            "cell_seed": seed}
                try:
                    split = make_split(d, ratio, fold=fold, n_folds=cfg.folds,
                                       seed=seed)
                    results = _fit_cell_configs(split, cfg.configs, seed,
                                                cfg.simplicity_params, cfg.alpha)
                except Exception as exc:  # record the failure, keep sweeping
                    for c in cfg.configs:
                        cells.append({**base_row, "config": c.name,
                                      "status": "failed", "error": str(exc)})
                    continue
                for c, metrics in results:
                    cells.append({**base_row, "config": c.name, "status": "ok",
                                  "error": "", **metrics})
    aggregates = _aggregate(cells, ("config", "ratio"))
    stats = _stats_tables(cells, cfg)
    return ExperimentReport("run", cells, aggregates, stats)


def run_grid(cfg: ExperimentConfig, fracs) -> ExperimentReport:
    """Full labeled-frac x unlabeled-frac grid using the first config."""
    slgb_cfg = cfg.configs[0]
    cells = []
    for name, d in cfg.datasets:
        for lf in fracs:
            for uf in fracs:
                seed = cell_seed(name, lf, uf, cfg.seed)
                base_row = {"dataset": name, "ratio": lf, "fold": 0,
                            "cell_seed": seed,
                            "labeled_frac": lf, "unlabeled_frac": uf}
                try:
                    split = make_grid_split(d, lf, uf, seed=seed)
                    results = _fit_cell_configs(split, [slgb_cfg], seed,
                                                cfg.simplicity_params, cfg.alpha)
                except Exception as exc:
                    cells.append({**base_row, "config": slgb_cfg.name,
                                  "status": "failed", "error": str(exc)})
                    continue
                _, metrics = results[0]
                cells.append({**base_row, "config": slgb_cfg.name,
                              "status": "ok", "error": "", **metrics})
    aggregates = _grid_table(cells, fracs)
    return ExperimentReport("grid", cells, aggregates, {})


def _aggregate(cells, keys) -> dict:
    groups = {}
    for row in cells:
        if row.get("status") != "ok":
            continue
        key = tuple(row[k] for k in keys)
        groups.setdefault(key, []).append(row)
    out = {}
    for key, rows in sorted(groups.items(), key=lambda kv: str(kv[0])):
        entry = {}
        for measure in ("kappa", "accuracy", "rules", "growth", "simplicity",
                        "utility"):
            vals = np.array([r[measure] for r in rows], dtype=float)
            entry[measure] = {"mean": float(vals.mean()),
                              "stdev": float(vals.std(ddof=0)),
                              "n": len(vals)}
        out["|".join(str(k) for k in key)] = entry
    return out


def _grid_table(cells, fracs) -> dict:
    table = {}
    for measure in ("kappa", "accuracy", "rules", "growth", "simplicity",
                    "utility"):
        grid = {}
        for lf in fracs:
            for uf in fracs:
                vals = [r[measure] for r in cells
                        if r.get("status") == "ok"
                        and r["labeled_frac"] == lf and r["unlabeled_frac"] == uf]
                if vals:
                    grid[f"{lf}|{uf}"] = float(np.mean(vals))
        table[measure] = grid
    return table


def _stats_tables(cells, cfg: ExperimentConfig) -> dict:
    """Per-ratio Friedman + Wilcoxon battery over per-dataset mean kappas."""
    names = [c.name for c in cfg.configs]
    if len(names) < 2:
        return {}
    out = {}
    for ratio in cfg.ratios:
        matrix = []
        datasets = []
        for ds_name, _ in cfg.datasets:
            row = []
            for cname in names:
                vals = [r["kappa"] for r in cells
                        if r.get("status") == "ok" and r["dataset"] == ds_name
                        and r["ratio"] == ratio and r["config"] == cname]
                if not vals:
                    row = None
                    break
                row.append(float(np.mean(vals)))
            if row is not None:
                matrix.append(row)
                datasets.append(ds_name)
        if len(matrix) >= 2:
            out[str(ratio)] = test_battery(np.asarray(matrix), names)
    return out


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_cells_csv(report: ExperimentReport, path) -> None:
    extra = []
    if report.kind == "grid":
        extra = ["labeled_frac", "unlabeled_frac"]
    columns = CELL_COLUMNS + extra
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in report.cells:
            w.writerow([_format_cell(row.get(c, "")) for c in columns])


def write_report_json(report: ExperimentReport, path) -> None:
    with open(path, "w") as fh:
        json.dump({"kind": report.kind, "aggregates": report.aggregates,
                   "stats": report.stats}, fh, indent=2, sort_keys=True)
