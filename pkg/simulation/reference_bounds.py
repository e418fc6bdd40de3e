"""
Quantidades teóricas de referência: cota inferior minimax, cotas de erro,
tempos de parada teóricos e número máximo de iterações. Servem só para relatório.
"""

import math

import numpy as np

from config import (
    LOWER_BOUND_DENOMINATOR,
    OPTIMAL_BOUND_CONSTANT,
    PATH_BOUND_CONSTANT,
    SUBOPTIMAL_BOUND_CONSTANT,
    T0_STOPPING_FACTOR,
    T_INFINITY_STOPPING_FACTOR,
)
from models.solver_models import FitResult, SolverTrace
from models.sparse_models import SparseCoefficients
from utils.errors import InvalidArgumentError
from utils.group_helpers import delta_constants


def lower_bound_reference(
    s: int, s0: int, m: int, d: int, n: int, sigma: float, theta_max: float
) -> float:
    """sigma^2 s s0 Delta / (256 theta_max^2 n)."""
    if theta_max <= 0 or n < 1:
        raise InvalidArgumentError(f"theta_max e n devem ser positivos ({theta_max}, {n})")
    delta, _ = delta_constants(s, s0, m, d)
    return sigma**2 * s * s0 * delta / (LOWER_BOUND_DENOMINATOR * theta_max**2 * n)


def path_error_bound(s: int, s0: int, lambda_t: float) -> float:
    """5.2 sqrt(s s0) lambda_t."""
    return PATH_BOUND_CONSTANT * math.sqrt(s * s0) * lambda_t


def suboptimal_error_bound(sigma: float, s: int, s0: int, m: int, d: int, n: int) -> float:
    """Cota de erro do estimador parado em t_bar: 18(1 + sqrt 2) sigma sqrt(s s0 Delta' / n)."""
    _, delta_prime = delta_constants(None, s0, m, d)
    return SUBOPTIMAL_BOUND_CONSTANT * sigma * math.sqrt(s * s0 * delta_prime / n)


def optimal_error_bound(sigma: float, s: int, s0: int, m: int, d: int, n: int) -> float:
    """Cota de erro do estimador t_tilde: 200 sigma sqrt(s s0 Delta / n)."""
    delta, _ = delta_constants(s, s0, m, d)
    return OPTIMAL_BOUND_CONSTANT * sigma * math.sqrt(s * s0 * delta / n)


def iteration_bound(n: int, beta_norm: float, sigma: float, p: int, kappa: float) -> float:
    """2 log(6 (sqrt(n) ||beta*|| / sigma  v  sqrt(log(e p)))) / log(1/kappa) + 1."""
    if sigma <= 0:
        return math.inf
    scale = max(math.sqrt(n) * beta_norm / sigma, math.sqrt(math.log(math.e * p)))
    return 2.0 * math.log(6.0 * scale) / math.log(1.0 / kappa) + 1.0


def theoretical_stopping_times(
    trace: SolverTrace, sigma: float, s: int, s0: int, m: int, d: int, n: int
) -> tuple[int | None, int | None]:
    """
    (t_0, t_inf): primeiro t da trajetória com lambda_t <= 12 sigma sqrt(Delta'/n)
    (resp. <= 4 sigma sqrt(Delta/n)), mais um. None quando a trajetória não chega lá.
    """
    delta, delta_prime = delta_constants(s, s0, m, d)
    thresholds = trace.thresholds()

    def first_crossing(level: float) -> int | None:
        hits = np.flatnonzero(thresholds <= level)
        return int(hits[0]) + 1 if hits.size else None

    return (
        first_crossing(T0_STOPPING_FACTOR * sigma * math.sqrt(delta_prime / n)),
        first_crossing(T_INFINITY_STOPPING_FACTOR * sigma * math.sqrt(delta / n)),
    )


def path_bound_holds(fit: FitResult, truth: SparseCoefficients, s: int, s0: int) -> bool:
    """
    Todo iterado beta^t satisfaz ||beta^t - beta*|| <= 5.2 sqrt(s s0) lambda,
    com lambda o limiar que produziu o iterado (lambda_{t-1}; lambda_0 para t = 0).

    Raises:
        InvalidArgumentError: ajuste sem trajetória (use keep_path=True)
    """
    path = fit.trace.path
    if path is None:
        raise InvalidArgumentError("Ajuste sem trajetória de coeficientes (keep_path=False)")

    thresholds = fit.trace.thresholds()
    for t, iterate in enumerate(path):
        producing = thresholds[max(t - 1, 0)]
        if np.linalg.norm(iterate - truth.values) > path_error_bound(s, s0, producing):
            return False
    return True
