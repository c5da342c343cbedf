"""Quickstart: train a self-labeling grey box and read its rules.

Generates a small mixed-attribute dataset, hides 80% of the labels, fits the
grey box (random forest -> self-labeling -> RST weighting -> PART list) and
prints the surrogate rules together with an explanation for one test instance.
"""

import numpy as np

from slgb import (ForestConfig, SlgbConfig, accuracy, confusion_matrix, explain,
                  fit, kappa, make_mixed, make_split, predict_slgb,
                  render_model)


def main():
    data = make_mixed(n=300, seed=42)
    split = make_split(data, ratio=0.2, fold=0, seed=42)
    print(f"{split.labeled.n} labeled, {split.unlabeled.n} unlabeled, "
          f"{split.test.n} test instances")

    config = SlgbConfig(forest=ForestConfig(n_trees=50), whitebox="part",
                        amending="rst", seed=42)
    model = fit(split.labeled, split.unlabeled, config)

    pred = predict_slgb(model, split.test.X)
    cm = confusion_matrix(split.test.y, pred, len(data.classes))
    print(f"\ntest accuracy {accuracy(cm):.3f}, kappa {kappa(cm):.3f}")
    print(f"weights: {model.training_report['weights']}")

    print("\nsurrogate rules:")
    print(render_model(model.surrogate))

    x = split.test.X[0]
    why = explain(model, x)
    print(f"\nfirst test instance -> {why['class']}")
    print(f"  because: {why['text']}")


if __name__ == "__main__":
    main()
