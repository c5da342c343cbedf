"""Grid study: how labeled and unlabeled volume shape accuracy and rule count.

Sweeps a labeled-fraction x unlabeled-fraction grid on a handful of synthetic
datasets and prints the suite-mean kappa and rule-count tables.
"""

from slgb import ExperimentConfig, ForestConfig, SlgbConfig, make_suite, run_grid

FRACS = (0.05, 0.25, 1.0)


def print_table(title, grid):
    print(f"\n{title} (rows = labeled frac, cols = unlabeled frac)")
    print(" " * 8 + "".join(f"{uf:>8}" for uf in FRACS))
    for lf in FRACS:
        cells = "".join(f"{grid[f'{lf}|{uf}']:>8.3f}" for uf in FRACS)
        print(f"{lf:>8}{cells}")


def main():
    cfg = ExperimentConfig(
        datasets=make_suite(4, n=500, seed=7),
        configs=[SlgbConfig(forest=ForestConfig(n_trees=25), whitebox="c45",
                            amending="conf", seed=0)],
        ratios=(0.1,),
        seed=0,
    )
    report = run_grid(cfg, FRACS)
    print_table("mean kappa", report.aggregates["kappa"])
    print_table("mean rule count", report.aggregates["rules"])


if __name__ == "__main__":
    main()
