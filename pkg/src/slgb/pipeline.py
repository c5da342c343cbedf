"""Orchestration of the self-labeling grey-box: fit, predict, explain."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from . import rules as rules_mod
from .amending import AMENDING_KINDS, apply_amending
from .data import Dataset
from .forest import ForestConfig, TrainedForest, train_forest
from .rough import HeomParams
from .rulemodel import RuleModel, firing_rule, model_from_json, model_to_json, render_rule

WHITEBOXES = ("c45", "part", "ripper")


@dataclass
class SlgbConfig:
    """bb-wb-am configuration; the black box is fixed to the random forest."""

    forest: ForestConfig = field(default_factory=ForestConfig)
    whitebox: str = "part"
    whitebox_params: dict = field(default_factory=dict)
    amending: str = "none"
    heom: HeomParams = field(default_factory=HeomParams)
    seed: int = 0

    def __post_init__(self):
        if self.whitebox not in WHITEBOXES:
            raise ValueError(f"unknown white box {self.whitebox!r}")
        if self.amending not in AMENDING_KINDS:
            raise ValueError(f"unknown amending kind {self.amending!r}")

    @property
    def name(self) -> str:
        wb = {"c45": "c45", "part": "part", "ripper": "rip"}[self.whitebox]
        return f"rf-{wb}-{self.amending}"


@dataclass
class SlgbModel:
    surrogate: RuleModel
    forest: TrainedForest
    config: SlgbConfig
    training_report: dict


def _train_whitebox(name: str, data: Dataset, weights, params: dict,
                    seed: int) -> RuleModel:
    if name == "c45":
        return rules_mod.train_c45(data, weights, **params)
    if name == "part":
        return rules_mod.train_part(data, weights, **params)
    return rules_mod.train_ripper(data, weights, seed=seed, **params)


def fit(labeled: Dataset, unlabeled: Dataset, config: SlgbConfig) -> SlgbModel:
    """Balance-weight, train the forest, self-label, amend, train the surrogate."""
    if labeled.n == 0:
        raise ValueError("labeled dataset is empty")
    if not labeled.labeled_mask.all():
        raise ValueError("labeled dataset has missing labels")
    if ([a.name for a in labeled.attributes] != [a.name for a in unlabeled.attributes]
            or [a.kind for a in labeled.attributes] != [a.kind for a in unlabeled.attributes]
            or labeled.classes != unlabeled.classes):
        raise ValueError("labeled and unlabeled parts must share one schema")

    from .amending import balance_weights

    bw = balance_weights(labeled)
    forest_config = replace(config.forest, seed=config.seed)
    forest = train_forest(labeled, bw, forest_config)
    enlarged = apply_amending(config.amending, labeled, unlabeled, forest,
                              config.heom)
    surrogate = _train_whitebox(config.whitebox, enlarged.data, enlarged.weights,
                                config.whitebox_params, config.seed)

    self_labels = enlarged.data.y[enlarged.self_labeled]
    report = {
        "config": config.name,
        "n_labeled": int(labeled.n),
        "n_self_labeled": int(unlabeled.n),
        "weights": {
            "min": float(enlarged.weights.min()),
            "max": float(enlarged.weights.max()),
            "mean": float(enlarged.weights.mean()),
        },
        "self_label_distribution": {
            str(labeled.classes[c]): int(k)
            for c, k in enumerate(np.bincount(self_labels,
                                              minlength=len(labeled.classes)))
        },
        "warnings": list(enlarged.notes),
        "degenerate_forest": forest.degenerate_class is not None,
    }
    return SlgbModel(surrogate, forest, config, report)


def predict_slgb(m: SlgbModel, x):
    """Inference delegates to the surrogate only; the forest is never consulted."""
    return rules_mod.predict_rules(m.surrogate, x)


def explain(m: SlgbModel, x) -> dict:
    """The firing rule (or root-to-leaf path) with rendered conditions."""
    index, rule = firing_rule(m.surrogate, np.asarray(x, dtype=float))
    return {
        "rule_index": index,
        "class": str(m.surrogate.classes[rule.consequent]),
        "is_default": rule.is_default,
        "n_conditions": len(rule.conditions),
        "coverage": rule.coverage,
        "confidence": rule.confidence,
        "text": render_rule(rule, m.surrogate),
    }


# ---------------------------------------------------------------------------
# Model bundle serialization
# ---------------------------------------------------------------------------


def bundle_to_json(m: SlgbModel) -> dict:
    return {
        "version": 1,
        "config": {
            "whitebox": m.config.whitebox,
            "whitebox_params": m.config.whitebox_params,
            "amending": m.config.amending,
            "epsilon": m.config.heom.epsilon,
            "seed": m.config.seed,
            "forest": {
                "n_trees": m.config.forest.n_trees,
                "attributes_per_split": m.config.forest.attributes_per_split,
                "min_leaf_weight": m.config.forest.min_leaf_weight,
                "max_depth": m.config.forest.max_depth,
            },
        },
        "surrogate": model_to_json(m.surrogate),
        "training_report": m.training_report,
    }


def save_bundle(m: SlgbModel, path) -> None:
    with open(path, "w") as fh:
        json.dump(bundle_to_json(m), fh, indent=2, sort_keys=True)


def load_surrogate(path) -> RuleModel:
    """Load the interpretable part of a saved bundle (all inference needs)."""
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != 1:
        raise ValueError("unsupported bundle version")
    return model_from_json(doc["surrogate"])
