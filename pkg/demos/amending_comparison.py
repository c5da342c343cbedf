"""Compare the three amending strategies across a small synthetic suite.

For each dataset and strategy this fits the grey box at a 10% label ratio and
reports test kappa, rule count and the utility blend, then runs the
nonparametric test battery over the per-dataset kappas.
"""

import json

import numpy as np

from slgb import (ExperimentConfig, ForestConfig, SlgbConfig, make_suite,
                  run_experiment)


def main():
    configs = [
        SlgbConfig(forest=ForestConfig(n_trees=30), whitebox="part",
                   amending=am, seed=0)
        for am in ("none", "conf", "rst")
    ]
    cfg = ExperimentConfig(
        datasets=make_suite(8, n=250, seed=7),
        configs=configs,
        ratios=(0.1,),
        folds=5,
        seed=0,
    )
    report = run_experiment(cfg)

    print(f"{'config':<14} {'kappa':>7} {'rules':>7} {'utility':>8}")
    for key, entry in report.aggregates.items():
        name = key.split("|")[0]
        print(f"{name:<14} {entry['kappa']['mean']:>7.3f} "
              f"{entry['rules']['mean']:>7.2f} {entry['utility']['mean']:>8.3f}")

    battery = report.stats.get("0.1")
    if battery:
        print(f"\nFriedman p = {battery['friedman']['p_value']:.4f}")
        for pair in battery["pairs"]:
            flag = "*" if pair["reject"] else " "
            print(f"  {pair['pair']:<28} p={pair['p_value']:.4f} "
                  f"holm={pair['holm_p']:.4f} {flag}")
    else:
        print("\n(not enough datasets for the pairwise battery)")


if __name__ == "__main__":
    main()
