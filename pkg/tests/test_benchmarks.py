"""Verificações de aceitação. As de Monte Carlo são marcadas como slow (pytest -m slow)."""

import pytest

from simulation.benchmarks import bench_config, outcome_summary, run_bench
from utils.errors import InvalidArgumentError


def test_operator_properties_quick():
    (outcome,) = run_bench(quick=True, only="operator_properties")
    assert outcome.passed, outcome.measured
    assert outcome.measured["cases"] == 1000
    assert outcome_summary(outcome).startswith("PASS operator_properties")


def test_determinism_quick():
    (outcome,) = run_bench(quick=True, only="determinism", workers=2)
    assert outcome.passed


def test_oracle_equivalence_quick():
    (outcome,) = run_bench(quick=True, only="oracle_equivalence")
    assert outcome.passed, outcome.measured
    assert outcome.measured["seeds"] == 20


def test_checks_run_with_practical_constants():
    config = bench_config(s0=5)
    assert config.phase_one_requires_support
    assert config.criterion_constant == 6.0
    assert config.s0 == 5


def test_unknown_check():
    with pytest.raises(InvalidArgumentError):
        run_bench(only="nope")


@pytest.mark.slow
@pytest.mark.parametrize(
    "name", ["oracle_equivalence", "scale_equivariance", "path_bound", "linear_convergence"]
)
def test_statistical_checks(name):
    (outcome,) = run_bench(quick=False, only=name)
    assert outcome.passed, outcome.measured


@pytest.mark.slow
@pytest.mark.parametrize("name", ["reference_table", "minimax_rate"])
def test_reference_regime_checks(name):
    (outcome,) = run_bench(quick=False, only=name, workers=4)
    assert outcome.passed, outcome.measured
