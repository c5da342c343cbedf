"""White-box rule learners and rule-model machinery (single import surface).

Types and inference live in rulemodel.py; the learners in trees.py (C4.5,
PART) and ripper.py.
"""

from .rulemodel import (  # noqa: F401
    Condition, Rule, RuleModel, TREE, PART_LIST, RIPPER_LIST,
    predict_rules, firing_rule, count_rules,
    render_condition, render_rule, render_model, model_to_json, model_from_json,
)
from .trees import train_c45, train_part  # noqa: F401
from .ripper import train_ripper  # noqa: F401

__all__ = [
    "Condition", "Rule", "RuleModel", "TREE", "PART_LIST", "RIPPER_LIST",
    "predict_rules", "firing_rule", "count_rules",
    "render_condition", "render_rule", "render_model",
    "model_to_json", "model_from_json",
    "train_c45", "train_part", "train_ripper",
]
