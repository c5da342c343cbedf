"""Acceptance suite: one test per criterion, each printing a PASS line.

The tendency checks (criteria 4, 5, 8) run the full synthetic suite and are
deterministic: the seeds, fold counts and forest sizes below reproduce the
exact numbers quoted in the assertion messages.
"""

import time

import numpy as np
import pytest

from slgb.amending import apply_amending, balance_weights, rst_weights
from slgb.data import make_split
from slgb.experiment import (ExperimentConfig, cell_seed, run_experiment,
                             run_grid, write_cells_csv)
from slgb.forest import ForestConfig, train_forest
from slgb.metrics import confusion_matrix, kappa, simplicity, utility
from slgb.pipeline import SlgbConfig, fit, predict_slgb
from slgb.rough import HeomParams, build_similarity_structure, region_memberships
from slgb.rulemodel import count_rules, predict_rules
from slgb.rules import train_c45, train_part, train_ripper
from slgb.stats import friedman_test, holm_correction, wilcoxon_signed_rank
from slgb.synth import make_suite
from conftest import (numeric_dataset, oracle_memberships, oracle_regions,
                      oracle_rst_weight, oracle_similarity_sets,
                      random_universe)

WHITEBOXES = {
    "c45": train_c45,
    "part": train_part,
    "ripper": lambda d, w: train_ripper(d, w, seed=0),
}


def _report(n, detail):
    print(f"\nACCEPTANCE {n}: PASS - {detail}")


def test_criterion_1_rst_oracle_equivalence():
    """Regions, memberships and weights match brute force on 200 universes."""
    rng = np.random.default_rng(20240901)
    t0 = time.time()
    for _ in range(200):
        d = random_universe(rng, n_max=30)
        params = HeomParams(epsilon=float(rng.uniform(0.7, 0.99)))
        from slgb.rough import attribute_information_gain
        w = attribute_information_gain(d)
        if w.sum() <= 0:
            w = np.ones(d.p)
        s = build_similarity_structure(d, params)
        sims = oracle_similarity_sets(d, list(w), params.epsilon)
        for c in range(len(d.classes)):
            pos, bnd, neg = oracle_regions(d, sims, c)
            assert set(s.positive[c]) == pos
            assert set(s.boundary[c]) == bnd
            assert set(s.negative[c]) == neg
        weights = rst_weights(d, HeomParams(attribute_weights=w,
                                            epsilon=params.epsilon))
        for i in range(d.n):
            c = int(d.y[i])
            mus = oracle_memberships(sims, i, oracle_regions(d, sims, c))
            assert region_memberships(s, i, c) == pytest.approx(mus, abs=1e-12)
            assert weights[i] == pytest.approx(oracle_rst_weight(*mus), abs=1e-12)
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report(1, f"200 random universes matched exactly in {elapsed:.1f}s")


def test_criterion_2_formula_fixtures():
    assert kappa(np.array([[45, 5], [15, 35]])) == pytest.approx(0.6, abs=1e-12)
    assert simplicity(40) == pytest.approx(0.4655, abs=5e-4)
    assert simplicity(30) == pytest.approx(0.75, abs=1e-12)
    y = [0] * 50 + [1] * 25 + [2] * 5
    d = numeric_dataset(np.zeros((80, 1)), y, classes=("A", "B", "C"))
    bw = balance_weights(d)
    assert (set(bw[:50]), set(bw[50:75]), set(bw[75:])) == ({0.1}, {0.2}, {1.0})
    assert utility(0.0, 0.5, alpha=0.6) == pytest.approx(0.5, abs=1e-12)
    _report(2, "kappa, simplicity, balance-weight and utility fixtures hold")


def test_criterion_3_pipeline_reduction():
    """Empty unlabeled set + no amending == standalone white box, all three."""
    d = make_suite(1, n=150, seed=13)[0][1]
    split = make_split(d, 0.4, fold=0, seed=21)
    empty = split.labeled.subset([])
    probes = np.vstack([split.test.X, split.unlabeled.X])
    bw = balance_weights(split.labeled)
    for name, learner in WHITEBOXES.items():
        cfg = SlgbConfig(forest=ForestConfig(n_trees=5), whitebox=name,
                         amending="none", seed=0)
        grey = fit(split.labeled, empty, cfg)
        standalone = learner(split.labeled, bw)
        agree = (predict_slgb(grey, probes) == predict_rules(standalone, probes))
        assert agree.all(), name
    _report(3, "grey box equals the standalone white box on 100% of probes")


def _suite12():
    return make_suite(12, n=250, seed=7)


def test_criterion_4_semi_supervised_lift():
    """RF-PART-RST beats the labeled-only PART baseline on >= 8/12 datasets."""
    t0 = time.time()
    wins = 0
    for name, d in _suite12():
        kap_grey, kap_base = [], []
        for fold in range(5):
            seed = cell_seed(name, 0.1, fold, 0)
            split = make_split(d, 0.1, fold=fold, n_folds=10, seed=seed)
            bw = balance_weights(split.labeled)
            forest = train_forest(split.labeled, bw,
                                  ForestConfig(n_trees=50, seed=seed))
            enl = apply_amending("rst", split.labeled, split.unlabeled, forest,
                                 HeomParams())
            grey = train_part(enl.data, enl.weights)
            base = train_part(split.labeled, bw)
            n_cls = len(d.classes)
            kap_grey.append(kappa(confusion_matrix(
                split.test.y, predict_rules(grey, split.test.X), n_cls)))
            kap_base.append(kappa(confusion_matrix(
                split.test.y, predict_rules(base, split.test.X), n_cls)))
        wins += np.mean(kap_grey) > np.mean(kap_base)
    elapsed = time.time() - t0
    assert wins >= 8, f"only {wins}/12 datasets improved"
    assert elapsed < 600.0
    _report(4, f"RF-PART-RST beat the baseline on {wins}/12 datasets "
               f"({elapsed:.0f}s)")


def test_criterion_5_amending_reduces_rules():
    """Median rule counts: RST <= NONE per white box, and RIP <= PART,
    each in >= 70% of dataset x ratio cells."""
    counts = {}
    for name, d in _suite12():
        for ratio in (0.1, 0.2):
            per = {}
            for fold in (0, 1):
                seed = cell_seed(name, ratio, fold, 0)
                split = make_split(d, ratio, fold=fold, n_folds=10, seed=seed)
                bw = balance_weights(split.labeled)
                forest = train_forest(split.labeled, bw,
                                      ForestConfig(n_trees=25, seed=seed))
                enl = {am: apply_amending(am, split.labeled, split.unlabeled,
                                          forest, HeomParams())
                       for am in ("none", "rst")}
                for wb, learner in WHITEBOXES.items():
                    for am in ("none", "rst"):
                        m = learner(enl[am].data, enl[am].weights)
                        per.setdefault((wb, am), []).append(count_rules(m))
            for key, vals in per.items():
                counts[(name, ratio) + key] = float(np.median(vals))

    cells = [(n, r) for n, _ in _suite12() for r in (0.1, 0.2)]
    fractions = {}
    for wb in WHITEBOXES:
        ok = sum(counts[(n, r, wb, "rst")] <= counts[(n, r, wb, "none")]
                 for n, r in cells)
        fractions[f"rst<=none[{wb}]"] = ok / len(cells)
    ok = sum(counts[(n, r, "ripper", "none")] <= counts[(n, r, "part", "none")]
             for n, r in cells)
    fractions["rip<=part"] = ok / len(cells)
    for label, frac in fractions.items():
        assert frac >= 0.7, f"{label} holds in only {frac:.0%} of cells"
    detail = ", ".join(f"{k}={v:.0%}" for k, v in fractions.items())
    _report(5, detail)


def test_criterion_6_statistics_fixtures():
    b = np.arange(15, dtype=float)
    r_plus, r_minus, p = wilcoxon_signed_rank(b + 1.0, b)
    assert (r_plus, r_minus) == (120.0, 0.0)
    assert p == pytest.approx(2.0**-14, abs=1e-9)
    adjusted, _ = holm_correction([0.01, 0.04, 0.03])
    assert adjusted == pytest.approx([0.03, 0.06, 0.06], abs=1e-12)
    m = np.tile(np.arange(7, dtype=float)[:, None], (1, 3))
    assert friedman_test(m)[1] == 1.0
    _report(6, "Wilcoxon exact, Holm and Friedman fixtures hold")


def test_criterion_7_run_determinism(tmp_path):
    def one_report():
        cfg = ExperimentConfig(
            datasets=make_suite(2, n=120, seed=3),
            configs=[SlgbConfig(forest=ForestConfig(n_trees=10),
                                whitebox="part", amending="conf", seed=0)],
            ratios=(0.2,), folds=2, seed=0)
        return run_experiment(cfg)

    pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
    write_cells_csv(one_report(), pa)
    write_cells_csv(one_report(), pb)
    assert pa.read_bytes() == pb.read_bytes()
    _report(7, "repeated run produced byte-identical per-cell CSV rows")


def test_criterion_8_grid_tendencies():
    """More unlabeled data helps scarce labels; rule counts grow with data."""
    fracs = (0.05, 0.5, 1.0)
    cfg = ExperimentConfig(
        datasets=make_suite(6, n=500, seed=7),
        configs=[SlgbConfig(forest=ForestConfig(n_trees=25), whitebox="c45",
                            amending="none", seed=0)],
        ratios=(0.1,), folds=2, seed=0)
    report = run_grid(cfg, fracs)
    mk = report.aggregates["kappa"]
    mr = report.aggregates["rules"]
    assert mk["0.05|1.0"] > mk["0.05|0.05"]
    steps = []
    for lf in fracs:
        for a, b in ((0.05, 0.5), (0.5, 1.0)):
            steps.append(mr[f"{lf}|{b}"] > mr[f"{lf}|{a}"])
            steps.append(mr[f"{b}|{lf}"] > mr[f"{a}|{lf}"])
    frac_up = np.mean(steps)
    assert frac_up >= 0.7, f"rule count grew in only {frac_up:.0%} of steps"
    _report(8, f"kappa {mk['0.05|0.05']:.3f} -> {mk['0.05|1.0']:.3f} with more "
               f"unlabeled data; rules grew in {frac_up:.0%} of adjacent steps")
