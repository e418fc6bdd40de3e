"""Testes do operador de hard thresholding duplamente esparso."""

import numpy as np
import pytest

from models.sparse_models import ThresholdParams
from simulation.benchmarks import operator_violations
from utils.errors import InvalidArgumentError
from utils.group_helpers import build_groups
from utils.thresholding import (
    double_sparse_threshold,
    hard_threshold_elementwise,
    hard_threshold_groupwise,
)


def _apply(v, lambda_, s0, sizes):
    return double_sparse_threshold(np.array(v), ThresholdParams(lambda_=lambda_, s0=s0), build_groups(sizes))


def test_elementwise_keeps_ties():
    assert hard_threshold_elementwise(np.array([0.5, -2.0, 1.0]), 1.0).tolist() == [0.0, -2.0, 1.0]


def test_group_step_uses_screened_vector():
    result = _apply([1.0, 1.0, 0.5, 0.5], 0.9, 2, [2, 2])
    assert result.values.tolist() == [1.0, 1.0, 0.0, 0.0]
    assert result.group_support == (0,)


def test_single_strong_entry_survives_group_step():
    result = _apply([2.0, 0.1, 0.1], 1.0, 2, [3])
    assert result.values.tolist() == [2.0, 0.0, 0.0]


def test_group_removed_after_screening():
    # antes do passo 1 a norma seria 2.83 >= 2; depois sobra 1.21 < 2
    result = _apply([1.1, 0.9, 0.9], 1.0, 2, [3])
    assert result.is_zero()


def test_group_threshold_tie_is_kept():
    result = _apply([1.0, 1.0], 1.0, 2, [2])
    assert result.support == (0, 1)


def test_zero_lambda_keeps_everything():
    v = np.array([0.0, -3.0, 1e-300, 2.0])
    assert _apply(v, 0.0, 1, [2, 2]).values.tolist() == v.tolist()


def test_s0_larger_than_d_is_rejected():
    with pytest.raises(InvalidArgumentError):
        hard_threshold_groupwise(np.ones(4), ThresholdParams(lambda_=1.0, s0=3), build_groups([2, 2]))


def test_wrong_dimension_is_rejected():
    with pytest.raises(InvalidArgumentError):
        _apply([1.0, 2.0], 1.0, 1, [3])


def test_negative_lambda_is_rejected():
    with pytest.raises(ValueError):
        ThresholdParams(lambda_=-1.0, s0=1)


def test_operator_properties_on_random_cases():
    rng = np.random.default_rng(11)
    for _ in range(200):
        sizes = rng.integers(1, 6, size=rng.integers(1, 6)).tolist()
        groups = build_groups(sizes)
        v = rng.standard_normal(groups.p) * rng.choice([0.5, 1.0, 3.0])
        s0 = int(rng.integers(1, groups.d + 1))
        lambda_ = float(rng.uniform(0.05, 2.0))
        assert operator_violations(v, lambda_, s0, groups, 4.0) == []
