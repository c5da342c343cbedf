"""Rule-model types, inference and rendering shared by the white-box learners."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import NUMERIC

TREE = "tree"
PART_LIST = "part_list"
RIPPER_LIST = "ripper_list"


@dataclass(frozen=True)
class Condition:
    """One antecedent test: numeric <=/> threshold or nominal == code."""

    attr: int
    op: str  # "<=", ">", "=="
    value: float

    def holds(self, x) -> bool:
        v = x[self.attr]
        if self.op == "<=":
            return v <= self.value
        if self.op == ">":
            return v > self.value
        return v == self.value

    def mask(self, X: np.ndarray) -> np.ndarray:
        col = X[:, self.attr]
        if self.op == "<=":
            return col <= self.value
        if self.op == ">":
            return col > self.value
        return col == self.value


@dataclass(frozen=True)
class Rule:
    conditions: tuple
    consequent: int
    coverage: float
    confidence: float

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")
        if self.coverage < 0:
            raise ValueError("coverage must be >= 0")

    @property
    def is_default(self) -> bool:
        return len(self.conditions) == 0

    def matches(self, x) -> bool:
        return all(c.holds(x) for c in self.conditions)

    def mask(self, X: np.ndarray) -> np.ndarray:
        out = np.ones(len(X), dtype=bool)
        for c in self.conditions:
            out &= c.mask(X)
        return out


@dataclass
class RuleModel:
    """Ordered rule list or flattened decision tree.

    For trees the rules are the leaves (mutually exclusive paths, order
    irrelevant); for lists the final rule is the catch-all default.
    """

    kind: str
    rules: list
    default_class: int
    classes: tuple
    attributes: list

    def __post_init__(self):
        if self.kind not in (TREE, PART_LIST, RIPPER_LIST):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if not self.rules:
            raise ValueError("rule model must contain at least one rule")
        if self.kind != TREE and not self.rules[-1].is_default:
            raise ValueError("ordered lists must end with the default rule")


def predict_rules(m: RuleModel, x) -> int | np.ndarray:
    """First matching rule fires; the default rule guarantees totality."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 2:
        return np.array([predict_rules(m, row) for row in x])
    for rule in m.rules:
        if rule.matches(x):
            return rule.consequent
    return m.default_class


def firing_rule(m: RuleModel, x) -> tuple:
    """(index, rule) of the rule that fires for x."""
    x = np.asarray(x, dtype=float)
    for i, rule in enumerate(m.rules):
        if rule.matches(x):
            return i, rule
    return len(m.rules) - 1, m.rules[-1]


def count_rules(m: RuleModel) -> int:
    """Leaf count for trees; rule count including the default for lists."""
    return len(m.rules)


# ---------------------------------------------------------------------------
# Rendering and serialization
# ---------------------------------------------------------------------------


def render_condition(c: Condition, attributes) -> str:
    a = attributes[c.attr]
    if a.kind == NUMERIC:
        return f"{a.name} {c.op} {c.value:.6g}"
    return f"{a.name} = {a.values[int(c.value)]}"


def render_rule(rule: Rule, m: RuleModel) -> str:
    if rule.is_default:
        body = "TRUE"
    else:
        body = " AND ".join(render_condition(c, m.attributes) for c in rule.conditions)
    cls = m.classes[rule.consequent]
    return (f"IF {body} THEN {cls} "
            f"(coverage={rule.coverage:.2f}, confidence={rule.confidence:.3f})")


def render_model(m: RuleModel) -> str:
    return "\n".join(render_rule(r, m) for r in m.rules)


def model_to_json(m: RuleModel) -> dict:
    return {
        "version": 1,
        "kind": m.kind,
        "classes": list(m.classes),
        "default_class": int(m.default_class),
        "attributes": [
            {"name": a.name, "kind": a.kind, "values": list(a.values)}
            for a in m.attributes
        ],
        "rules": [
            {
                "conditions": [
                    {"attr": c.attr, "op": c.op, "value": c.value}
                    for c in r.conditions
                ],
                "consequent": int(r.consequent),
                "coverage": float(r.coverage),
                "confidence": float(r.confidence),
            }
            for r in m.rules
        ],
    }


def model_from_json(doc: dict) -> RuleModel:
    if doc.get("version") != 1:
        raise ValueError("unsupported rule-model document version")
    from .data import Attribute, NOMINAL

    attrs = [
        Attribute(a["name"], a["kind"], tuple(a["values"]) if a["kind"] == NOMINAL else ())
        for a in doc["attributes"]
    ]
    rules = [
        Rule(
            tuple(Condition(c["attr"], c["op"], c["value"]) for c in r["conditions"]),
            r["consequent"],
            r["coverage"],
            r["confidence"],
        )
        for r in doc["rules"]
    ]
    return RuleModel(doc["kind"], rules, doc["default_class"], tuple(doc["classes"]), attrs)
