"""Solvers DSIHT e ADSIHT."""

from solvers.adaptive_solver import AdaptiveSolver, adsiht_fit, adsiht_fit_async, default_s0_grid
from solvers.base_solver import BaseSolver
from solvers.dsiht_solver import (
    DSIHTSolver,
    apply_threshold_schedule,
    dsiht_fit,
    gradient_step,
    initial_threshold,
    predict,
    project_least_squares,
    residual_quantiles,
    residual_sum_of_squares,
)
from solvers.information_criteria import ebic, information_criterion, sparse_group_criterion

__all__ = [
    "AdaptiveSolver",
    "BaseSolver",
    "DSIHTSolver",
    "adsiht_fit",
    "adsiht_fit_async",
    "apply_threshold_schedule",
    "default_s0_grid",
    "dsiht_fit",
    "ebic",
    "gradient_step",
    "information_criterion",
    "initial_threshold",
    "predict",
    "project_least_squares",
    "residual_quantiles",
    "residual_sum_of_squares",
    "sparse_group_criterion",
]
