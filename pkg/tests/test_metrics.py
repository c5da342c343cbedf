"""Fixture checks for kappa, growth, simplicity and utility."""

import numpy as np
import pytest

from slgb.metrics import (SimplicityParams, accuracy, confusion_matrix, kappa,
                          relative_growth, simplicity, utility)


def test_confusion_matrix():
    cm = confusion_matrix([0, 0, 1, 1, 2], [0, 1, 1, 1, 0], 3)
    assert cm.tolist() == [[1, 1, 0], [0, 2, 0], [1, 0, 0]]
    assert accuracy(cm) == pytest.approx(0.6)


def test_kappa_fixture():
    assert kappa(np.array([[45, 5], [15, 35]])) == pytest.approx(0.6, abs=1e-12)


def test_kappa_bounds():
    assert kappa(np.array([[50, 0], [0, 50]])) == pytest.approx(1.0)
    assert kappa(np.array([[0, 50], [50, 0]])) == pytest.approx(-1.0)


def test_kappa_degenerate_is_zero():
    # single observed class on both axes: chance agreement 1
    assert kappa(np.array([[10, 0], [0, 0]])) == 0.0


def test_kappa_empty_raises():
    with pytest.raises(ValueError):
        kappa(np.zeros((2, 2)))


def test_simplicity_fixtures():
    assert simplicity(40) == pytest.approx(0.4655, abs=5e-4)
    assert simplicity(30) == pytest.approx(0.75, abs=1e-12)
    assert simplicity(0) == pytest.approx(0.9978, abs=5e-4)


def test_simplicity_monotone_decreasing():
    vals = [simplicity(r) for r in range(0, 200, 5)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(0.0 < v < 1.0 for v in vals)


def test_simplicity_params():
    steep = SimplicityParams(slope=1.0)
    assert simplicity(60, steep) < simplicity(60)
    with pytest.raises(ValueError):
        SimplicityParams(slope=0.0)
    with pytest.raises(ValueError):
        SimplicityParams(growth_position=0.0)
    with pytest.raises(ValueError):
        simplicity(-1)


def test_relative_growth():
    assert relative_growth(12, 4) == pytest.approx(3.0)
    assert relative_growth(3, 3) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        relative_growth(5, 0)


def test_utility_fixture():
    assert utility(0.0, 0.5, alpha=0.6) == pytest.approx(0.5, abs=1e-12)
    assert utility(1.0, 1.0) == pytest.approx(1.0)
    assert utility(-1.0, 0.0) == pytest.approx(0.0)


def test_utility_validation():
    with pytest.raises(ValueError):
        utility(1.5, 0.5)
    with pytest.raises(ValueError):
        utility(0.5, 1.5)
    with pytest.raises(ValueError):
        utility(0.5, 0.5, alpha=2.0)
