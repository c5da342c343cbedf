"""Command-line interface: run, grid, stats, explain, config files."""

import csv
import json

import numpy as np
import pytest

from slgb.cli import main, parse_config_name
from slgb.data import save_csv
from slgb.synth import make_blobs


def test_parse_config_name():
    cfg = parse_config_name("rf-part-rst")
    assert cfg.whitebox == "part" and cfg.amending == "rst"
    assert parse_config_name("rf-rip-conf").whitebox == "ripper"
    assert parse_config_name("rf-c45-none").name == "rf-c45-none"
    for bad in ("svm-part-rst", "rf-cart-none", "rf-part-filter", "rf-part"):
        with pytest.raises(ValueError):
            parse_config_name(bad)


def test_run_verb(tmp_path, capsys):
    out = tmp_path / "out"
    rc = main(["run", "--synthetic", "2", "--ratios", "0.2", "--folds", "2",
               "--trees", "8", "--configs", "rf-part-none", "--seed", "1",
               "--out", str(out)])
    assert rc == 0
    rows = list(csv.reader((out / "cells.csv").open()))
    assert len(rows) == 1 + 2 * 2  # header + datasets x folds
    report = json.loads((out / "report.json").read_text())
    assert report["kind"] == "run"


def test_run_verb_with_data_file(tmp_path):
    data = tmp_path / "blobs.csv"
    save_csv(make_blobs(n=120, n_classes=2, seed=4), data)
    out = tmp_path / "out"
    rc = main(["run", "--data", str(data), "--ratios", "0.3", "--folds", "2",
               "--trees", "8", "--configs", "rf-c45-conf", "--out", str(out)])
    assert rc == 0
    assert (out / "cells.csv").exists()


def test_grid_verb(tmp_path):
    out = tmp_path / "grid"
    rc = main(["grid", "--synthetic", "1", "--fracs", "0.3,0.9", "--trees", "8",
               "--configs", "rf-part-conf", "--out", str(out)])
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["kind"] == "grid"
    assert set(report["aggregates"]["kappa"]) == {"0.3|0.3", "0.3|0.9",
                                                  "0.9|0.3", "0.9|0.9"}


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "exp.toml"
    cfg.write_text('synthetic = 1\nratios = [0.2]\nfolds = 2\ntrees = 8\n'
                   'configs = "rf-part-none"\n')
    out = tmp_path / "out"
    # CLI flag overrides the file's trees value; the rest comes from the file
    rc = main(["run", "--config", str(cfg), "--trees", "6", "--out", str(out)])
    assert rc == 0
    assert (out / "cells.csv").exists()


def test_stats_verb(tmp_path, capsys):
    scores = tmp_path / "scores.csv"
    rng = np.random.default_rng(0)
    with scores.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dataset", "a", "b"])
        for i in range(8):
            base = rng.random()
            w.writerow([f"d{i}", base + 0.1, base])
    rc = main(["stats", str(scores)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pairs"][0]["pair"] == "a vs. b"
    out_file = tmp_path / "battery.json"
    main(["stats", str(scores), "--out", str(out_file)])
    assert json.loads(out_file.read_text())["friedman"]["p_value"] <= 1.0


def test_explain_verb(tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--synthetic", "1", "--ratios", "0.3", "--folds", "2",
          "--trees", "8", "--configs", "rf-part-none", "--out", str(out),
          "--save-models"])
    bundle = next(out.glob("*.bundle.json"))
    doc = json.loads(bundle.read_text())
    names = [a["name"] for a in doc["surrogate"]["attributes"]]
    inst = tmp_path / "inst.csv"
    with inst.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(names)
        w.writerow([0.0] * len(names))
    capsys.readouterr()
    rc = main(["explain", "--model", str(bundle), "--data", str(inst)])
    assert rc == 0
    line = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert {"class", "rule", "rule_index", "is_default"} <= set(line)


def test_explain_rejects_schema_mismatch(tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "--synthetic", "1", "--ratios", "0.3", "--folds", "2",
          "--trees", "8", "--configs", "rf-part-none", "--out", str(out),
          "--save-models"])
    bundle = next(out.glob("*.bundle.json"))
    inst = tmp_path / "inst.csv"
    inst.write_text("wrong,header\n1,2\n")
    with pytest.raises(SystemExit):
        main(["explain", "--model", str(bundle), "--data", str(inst)])


def test_run_requires_some_dataset(tmp_path):
    with pytest.raises(SystemExit):
        main(["run", "--out", str(tmp_path / "x")])
