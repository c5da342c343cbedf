"""Experiment-runner CLI: run, grid, stats, explain."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

import numpy as np

from . import pipeline
from .data import NOMINAL, NUMERIC, load_dataset, make_split
from .experiment import (ExperimentConfig, run_experiment, run_grid,
                         write_cells_csv, write_report_json)
from .forest import ForestConfig
from .metrics import SimplicityParams
from .rough import HeomParams
from .rulemodel import firing_rule, render_rule
from .stats import read_score_csv, test_battery
from .synth import make_suite


def parse_config_name(name: str) -> pipeline.SlgbConfig:
    """Parse a 'bb-wb-am' triple such as rf-part-rst (bb is fixed to rf)."""
    parts = name.lower().split("-")
    if len(parts) != 3 or parts[0] != "rf":
        raise ValueError(f"config {name!r} must look like rf-<wb>-<am>")
    wb = {"c45": "c45", "part": "part", "rip": "ripper", "ripper": "ripper"}.get(parts[1])
    if wb is None:
        raise ValueError(f"unknown white box {parts[1]!r}")
    if parts[2] not in ("none", "conf", "rst"):
        raise ValueError(f"unknown amending {parts[2]!r}")
    return pipeline.SlgbConfig(whitebox=wb, amending=parts[2])


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="TOML config file mirroring the flags")
    p.add_argument("--data", nargs="*", default=None,
                   help="CSV or ARFF dataset paths")
    p.add_argument("--class-column", default=None)
    p.add_argument("--synthetic", type=int, default=None,
                   help="generate N synthetic datasets instead of/besides --data")
    p.add_argument("--configs", default=None,
                   help="comma-separated bb-wb-am triples (default rf-part-rst)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--simplicity-lambda", type=float, default=None)
    p.add_argument("--simplicity-eta", type=float, default=None)
    p.add_argument("--simplicity-nu", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--trees", type=int, default=None, help="forest size")
    p.add_argument("--out", default=None, help="output directory")


def _merged(args, defaults: dict) -> dict:
    """File config < CLI flags < built-in defaults resolution."""
    settings = dict(defaults)
    if args.config:
        with open(args.config, "rb") as fh:
            file_cfg = tomllib.load(fh)
        for k, v in file_cfg.items():
            settings[k.replace("-", "_")] = v
    for k in defaults:
        v = getattr(args, k, None)
        if v is not None:
            settings[k] = v
    return settings


_DEFAULTS = {
    "data": [],
    "class_column": None,
    "synthetic": None,
    "configs": "rf-part-rst",
    "ratios": "0.1,0.2,0.3,0.4",
    "folds": 10,
    "fracs": "0.05,0.5,1.0",
    "seed": 0,
    "alpha": 0.6,
    "simplicity_lambda": 0.1,
    "simplicity_eta": 30.0,
    "simplicity_nu": 0.5,
    "epsilon": 0.98,
    "trees": 100,
    "out": "slgb_out",
    "save_models": False,
}


def _parse_floats(value) -> tuple:
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    return tuple(float(v) for v in str(value).split(",") if v != "")


def _load_datasets(settings) -> list:
    datasets = []
    for path in settings["data"] or []:
        fmt = "keel_arff" if Path(path).suffix.lower() in (".arff", ".dat") else "csv"
        with open(path, "rb") as fh:
            d = load_dataset(fh, fmt, class_column=settings["class_column"])
        datasets.append((Path(path).stem, d))
    if settings["synthetic"]:
        datasets.extend(make_suite(settings["synthetic"], seed=settings["seed"]))
    if not datasets:
        raise SystemExit("no datasets: pass --data and/or --synthetic")
    return datasets


def _experiment_config(settings) -> ExperimentConfig:
    heom = HeomParams(epsilon=settings["epsilon"])
    configs = []
    for name in str(settings["configs"]).split(","):
        c = parse_config_name(name.strip())
        c.forest = ForestConfig(n_trees=int(settings["trees"]))
        c.heom = heom
        c.seed = int(settings["seed"])
        configs.append(c)
    simp = SimplicityParams(slope=settings["simplicity_lambda"],
                            shift=settings["simplicity_eta"],
                            growth_position=settings["simplicity_nu"])
    return ExperimentConfig(
        datasets=_load_datasets(settings),
        configs=configs,
        ratios=_parse_floats(settings["ratios"]),
        folds=int(settings["folds"]),
        simplicity_params=simp,
        alpha=float(settings["alpha"]),
        seed=int(settings["seed"]),
    )


def _emit(report, out_dir: str) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_cells_csv(report, out / "cells.csv")
    write_report_json(report, out / "report.json")
    print(f"wrote {out / 'cells.csv'} and {out / 'report.json'}")


def _cmd_run(args) -> int:
    settings = _merged(args, _DEFAULTS)
    settings["ratios"] = args.ratios if args.ratios is not None else settings["ratios"]
    settings["folds"] = args.folds if args.folds is not None else settings["folds"]
    cfg = _experiment_config(settings)
    report = run_experiment(cfg)
    _emit(report, settings["out"])
    if settings["save_models"]:
        _save_models(cfg, Path(settings["out"]))
    return 0


def _save_models(cfg: ExperimentConfig, out: Path) -> None:
    """Fit each config on fold 0 of each dataset and save the bundles."""
    for name, d in cfg.datasets:
        split = make_split(d, cfg.ratios[0], fold=0, n_folds=cfg.folds,
                           seed=cfg.seed)
        for c in cfg.configs:
            model = pipeline.fit(split.labeled, split.unlabeled, c)
            path = out / f"{name}__{c.name}.bundle.json"
            pipeline.save_bundle(model, path)
            print(f"wrote {path}")


def _cmd_grid(args) -> int:
    settings = _merged(args, _DEFAULTS)
    settings["folds"] = args.folds if args.folds is not None else settings["folds"]
    cfg = _experiment_config(settings)
    report = run_grid(cfg, _parse_floats(settings["fracs"]))
    _emit(report, settings["out"])
    return 0


def _cmd_stats(args) -> int:
    matrix, names, _ = read_score_csv(args.scores)
    battery = test_battery(matrix, names, alpha=args.alpha)
    text = json.dumps(battery, indent=2)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def _cmd_explain(args) -> int:
    surrogate = pipeline.load_surrogate(args.model)
    with open(args.data) as fh:
        rows = [r for r in csv.reader(fh) if r]
    header = [h.strip() for h in rows[0]]
    names = [a.name for a in surrogate.attributes]
    try:
        positions = [header.index(n) for n in names]
    except ValueError as exc:
        raise SystemExit(f"CSV header does not match the model schema: {exc}")
    for lineno, row in enumerate(rows[1:], start=2):
        x = np.empty(len(names))
        for j, (pos, a) in enumerate(zip(positions, surrogate.attributes)):
            cell = row[pos].strip()
            if a.kind == NUMERIC:
                x[j] = float(cell)
            else:
                if cell not in a.values:
                    raise SystemExit(f"line {lineno}: {cell!r} not in domain of {a.name}")
                x[j] = a.values.index(cell)
        idx, rule = firing_rule(surrogate, x)
        print(json.dumps({
            "line": lineno,
            "class": str(surrogate.classes[rule.consequent]),
            "rule_index": idx,
            "is_default": rule.is_default,
            "rule": render_rule(rule, surrogate),
        }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slgb",
                                     description="Self-labeling grey-box experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="cross-validated ratio sweep")
    _add_common(p_run)
    p_run.add_argument("--ratios", default=None, help="comma-separated ratios")
    p_run.add_argument("--folds", type=int, default=None)
    p_run.add_argument("--save-models", action="store_true", dest="save_models",
                       default=None, help="also save fitted model bundles")
    p_run.set_defaults(func=_cmd_run)

    p_grid = sub.add_parser("grid", help="labeled x unlabeled fraction grid")
    _add_common(p_grid)
    p_grid.add_argument("--fracs", default=None, help="comma-separated fractions")
    p_grid.add_argument("--folds", type=int, default=None)
    p_grid.set_defaults(func=_cmd_grid)

    p_stats = sub.add_parser("stats", help="test battery on a score CSV")
    p_stats.add_argument("scores", help="CSV: dataset column + one column per config")
    p_stats.add_argument("--alpha", type=float, default=0.05)
    p_stats.add_argument("--out", default=None)
    p_stats.set_defaults(func=_cmd_stats)

    p_explain = sub.add_parser("explain", help="classify and explain CSV instances")
    p_explain.add_argument("--model", required=True, help="model bundle JSON")
    p_explain.add_argument("--data", required=True, help="CSV of instances")
    p_explain.set_defaults(func=_cmd_explain)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
