"""Geração sintética, métricas, protocolo de replicação e verificações de aceitação."""

from simulation.benchmarks import BENCH_CHECKS, run_bench
from simulation.data_generators import gen_coefficients, gen_design, gen_response, signal_variance
from simulation.experiment_runner import (
    aggregate_rows,
    parse_sweep,
    report_frame,
    run_experiment,
    run_experiment_async,
    run_replication,
    run_sweep,
    sweep_frame,
)
from simulation.metrics import compute_metrics, matthews_correlation
from simulation.reference_bounds import (
    iteration_bound,
    lower_bound_reference,
    optimal_error_bound,
    path_bound_holds,
    path_error_bound,
    suboptimal_error_bound,
    theoretical_stopping_times,
)

__all__ = [
    "BENCH_CHECKS",
    "aggregate_rows",
    "compute_metrics",
    "gen_coefficients",
    "gen_design",
    "gen_response",
    "iteration_bound",
    "lower_bound_reference",
    "matthews_correlation",
    "optimal_error_bound",
    "parse_sweep",
    "path_bound_holds",
    "path_error_bound",
    "report_frame",
    "run_bench",
    "run_experiment",
    "run_experiment_async",
    "run_replication",
    "run_sweep",
    "signal_variance",
    "suboptimal_error_bound",
    "sweep_frame",
    "theoretical_stopping_times",
]
