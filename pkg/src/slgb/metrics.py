"""Prediction and interpretability measures: kappa, growth, simplicity, utility."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SimplicityParams:
    """Generalized-sigmoid parameters; defaults give ~0.5 at 40 rules."""

    theta1: float = 1.0
    theta2: float = 0.0
    slope: float = 0.1
    shift: float = 30.0
    growth_position: float = 0.5

    def __post_init__(self):
        if self.slope <= 0:
            raise ValueError("slope must be positive")
        if self.growth_position <= 0:
            raise ValueError("growth_position must be positive")


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    """Rows = actual class, columns = predicted class."""
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    cm = np.zeros((n_classes, n_classes), dtype=int)
    np.add.at(cm, (y_true, y_pred), 1)
    return cm


def accuracy(cm: np.ndarray) -> float:
    cm = np.asarray(cm)
    return float(np.trace(cm) / cm.sum())


def kappa(cm: np.ndarray) -> float:
    """Cohen's kappa from a confusion matrix.

    Degenerate case (chance agreement 1, i.e. single-class truth and
    prediction) is defined as 0.
    """
    cm = np.asarray(cm, dtype=float)
    total = cm.sum()
    if total <= 0:
        raise ValueError("empty confusion matrix")
    po = np.trace(cm) / total
    pe = float((cm.sum(axis=1) * cm.sum(axis=0)).sum()) / total**2
    if abs(1.0 - pe) < 1e-15:
        return 0.0
    return float((po - pe) / (1.0 - pe))


def relative_growth(grey_rules: int, white_rules: int) -> float:
    """Rule-count ratio of the grey-box surrogate over the labeled-only baseline."""
    if white_rules < 1:
        raise ValueError("baseline rule count must be >= 1")
    return grey_rules / white_rules


def simplicity(rules: int, p: SimplicityParams | None = None) -> float:
    """Sigmoid-shaped conciseness score in (0, 1), decreasing in rule count."""
    if rules < 0:
        raise ValueError("rule count must be non-negative")
    p = p or SimplicityParams()
    z = 1.0 + np.exp(-p.slope * (rules - p.shift))
    return float(p.theta1 + (p.theta2 - p.theta1) / z ** (1.0 / p.growth_position))


def utility(kappa_value: float, simplicity_value: float, alpha: float = 0.6) -> float:
    """Alpha-weighted blend of rescaled kappa and simplicity."""
    if not -1.0 <= kappa_value <= 1.0:
        raise ValueError("kappa must be in [-1, 1]")
    if not 0.0 <= simplicity_value <= 1.0:
        raise ValueError("simplicity must be in [0, 1]")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    return alpha * (kappa_value + 1.0) / 2.0 + (1.0 - alpha) * simplicity_value
