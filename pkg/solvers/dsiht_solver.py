"""
Solver DSIHT: passo de gradiente, limiar inicial guiado pelos dados, escala
geométrica de limiares, duas fases de parada, projeção de mínimos quadrados
(debiasing) e seleção do iterado pelo critério C_t.
"""

import logging
import math
import warnings
from collections.abc import Iterable

import numpy as np
import pandas as pd
import scipy.linalg
import scipy.stats

from config import (
    INITIAL_THRESHOLD_CORRELATION_FACTOR,
    INITIAL_THRESHOLD_NOISE_FACTOR,
    PROJECTION_RIDGE_FACTOR,
    RANK_TOLERANCE,
)
from models.solver_models import (
    FitResult,
    IterationRecord,
    LeastSquaresProjection,
    SolverConfig,
    SolverTrace,
)
from models.sparse_models import Dataset, GroupStructure, SparseCoefficients, ThresholdParams
from solvers.base_solver import BaseSolver
from utils.errors import InvalidArgumentError, InvalidStateError
from utils.group_helpers import delta_constants, double_sparse_norm, omega_from_norm
from utils.thresholding import double_sparse_threshold

logger = logging.getLogger(__name__)


def gradient_step(beta: SparseCoefficients, data: Dataset) -> np.ndarray:
    """
    Ponto de chegada H = beta + (1/n) X^T (y - X beta).

    X beta é calculado apenas sobre o suporte de beta.
    """
    if beta.groups.p != data.p:
        raise InvalidArgumentError(f"beta tem p={beta.groups.p}, design tem p={data.p}")
    support = np.asarray(beta.support, dtype=int)
    residual = data.response - data.design[:, support] @ beta.values[support]
    return beta.values + data.design.T @ residual / data.n


def initial_threshold(
    data: Dataset,
    s0: int,
    groups: GroupStructure,
    noise_factor: float = INITIAL_THRESHOLD_NOISE_FACTOR,
    correlation_factor: float = INITIAL_THRESHOLD_CORRELATION_FACTOR,
) -> float:
    """
    lambda_0 = (100/9) sigma_0 sqrt(Delta'/n)  v  (19/4) ||M||_inf.

    sigma_0 = ||y|| / sqrt(n) (iterado inicial nulo) e M = X^T y / n.
    Retorna 0 exatamente quando y = 0.
    """
    _, delta_prime = delta_constants(None, s0, groups.m, groups.d)
    n = data.n
    sigma_0 = float(np.linalg.norm(data.response)) / math.sqrt(n)
    marginal = data.design.T @ data.response / n
    noise_term = noise_factor * sigma_0 * math.sqrt(delta_prime / n)
    correlation_term = correlation_factor * float(np.max(np.abs(marginal)))
    return max(noise_term, correlation_term)


def scheduled_threshold(lambda0: float, kappa: float, t: int) -> float:
    """lambda_t = (sqrt(kappa))^t lambda_0."""
    return lambda0 * math.sqrt(kappa) ** t


def apply_threshold_schedule(lambda0: float, kappa: float, steps: int) -> np.ndarray:
    """Sequência lambda_0, ..., lambda_steps da escala geométrica."""
    return np.array([scheduled_threshold(lambda0, kappa, t) for t in range(steps + 1)])


def residual_sum_of_squares(data: Dataset, coefficients: SparseCoefficients) -> float:
    """||y - X beta||^2 usando apenas o suporte."""
    support = np.asarray(coefficients.support, dtype=int)
    residual = data.response - data.design[:, support] @ coefficients.values[support]
    return float(residual @ residual)


def project_least_squares(
    data: Dataset,
    groups: GroupStructure,
    support: Iterable[int],
    projection_ridge: float | None = None,
) -> LeastSquaresProjection:
    """
    Minimizador de ||y - X beta||^2 com beta suportado em S.

    Quando X_S^T X_S é numericamente singular (ou |S| > n), resolve o sistema
    estabilizado com `projection_ridge` na diagonal e marca o resultado.

    Args:
        data: Dataset padronizado
        groups: Estrutura de grupos (para a contabilidade de suporte)
        support: Conjunto de índices S
        projection_ridge: Ridge de fallback (padrão: 1e-10 * n)

    Returns:
        LeastSquaresProjection com coeficientes, RSS e flag de posto deficiente
    """
    index = np.array(sorted({int(i) for i in support}), dtype=int)
    values = np.zeros(groups.p)
    y = data.response

    if index.size == 0:
        return LeastSquaresProjection(
            coefficients=SparseCoefficients.from_values(values, groups), rss=float(y @ y)
        )

    design_s = data.design[:, index]
    gram = design_s.T @ design_s
    rhs = design_s.T @ y
    eigenvalues = scipy.linalg.eigvalsh(gram)
    rank_deficient = index.size > data.n or eigenvalues[0] <= RANK_TOLERANCE * eigenvalues[-1]

    if rank_deficient:
        ridge = PROJECTION_RIDGE_FACTOR * data.n if projection_ridge is None else projection_ridge
        gram = gram + ridge * np.eye(index.size)
        logger.debug(f"Projeção com posto deficiente (|S|={index.size}), ridge={ridge:.3g}")

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            values[index] = scipy.linalg.solve(gram, rhs, assume_a="pos")
    except np.linalg.LinAlgError:
        # ridge nulo com sistema singular
        values[index] = scipy.linalg.lstsq(design_s, y)[0]
        rank_deficient = True

    residual = y - design_s @ values[index]
    return LeastSquaresProjection(
        coefficients=SparseCoefficients.from_values(values, groups),
        rss=float(residual @ residual),
        rank_deficient=rank_deficient,
    )


class DSIHTSolver(BaseSolver):
    """Double sparse IHT com s0 fixo."""

    def __init__(self, config: SolverConfig | None = None):
        super().__init__("DSIHT", config)

    def fit(self, data: Dataset, groups: GroupStructure) -> FitResult:
        """
        Executa as duas fases do DSIHT e devolve o iterado que minimiza C_t.

        Fase 1 itera enquanto lambda_t >= 8 sigma_t sqrt(Delta') / sqrt(n);
        fase 2 itera enquanto lambda_t >= 4 sigma_bar / sqrt(n), avaliando
        C_t = RSS_t/n + c sigma_bar^2 Omega(beta_t)/n para todo t em [t_bar, T].
        Os fatores 8, 4 e c vêm de `SolverConfig`; com `phase_one_requires_support`
        a fase 1 não termina enquanto o iterado for nulo.

        Raises:
            InvalidArgumentError: s0 ausente/fora de [1, d] ou dimensões inconsistentes
        """
        config = self.config
        s0 = config.s0
        if s0 is None:
            raise InvalidArgumentError("DSIHT requer s0 definido (use ADSIHT para grade)")
        if groups.p != data.p:
            raise InvalidArgumentError(f"Grupos cobrem p={groups.p}, design tem p={data.p}")

        n = data.n
        sqrt_n = math.sqrt(n)
        _, delta_prime = delta_constants(None, s0, groups.m, groups.d)
        ridge = config.ridge_for(n)
        lambda0 = initial_threshold(
            data, s0, groups, config.initial_noise_factor, config.initial_correlation_factor
        )

        iterate = SparseCoefficients.zeros(groups)
        rss = float(data.response @ data.response)

        if lambda0 == 0.0:
            self.log_info("Resposta nula (lambda_0 = 0): ajuste nulo imediato")
            return self._zero_fit(iterate, s0, data)

        history: list[tuple[float, SparseCoefficients, float, bool]] = [(lambda0, iterate, rss, False)]
        t = 0
        truncated = False

        def advance() -> None:
            nonlocal iterate, rss, t
            lambda_t = scheduled_threshold(lambda0, config.kappa, t)
            iterate, rss, rank_deficient = self._step(data, groups, iterate, lambda_t, s0, ridge)
            t += 1
            history.append((scheduled_threshold(lambda0, config.kappa, t), iterate, rss, rank_deficient))
            self.log_debug(
                f"t={t} lambda={history[-1][0]:.5g} |S|={iterate.element_count} "
                f"|G|={iterate.group_count} rss={rss:.5g}"
            )

        # Fase 1
        while True:
            sigma_t = math.sqrt(rss / n)
            guard = config.phase_one_factor * sigma_t / sqrt_n * math.sqrt(delta_prime)
            below_guard = scheduled_threshold(lambda0, config.kappa, t) < guard
            if below_guard and not (config.phase_one_requires_support and iterate.is_zero()):
                break
            if t >= config.max_iterations:
                truncated = True
                self.log_warning(f"max_iterations={config.max_iterations} atingido na fase 1")
                break
            advance()

        t_bar = t
        sigma_bar = math.sqrt(rss / n)
        at_bar = iterate
        self.log_debug(f"Fase 1 concluída: t_bar={t_bar}, sigma_bar={sigma_bar:.5g}")

        # Fase 2
        criteria: dict[int, float] = {}
        t_tilde = t_bar
        while True:
            criteria[t] = self._criterion(iterate, rss, sigma_bar, s0, groups, n)
            if criteria[t] < criteria[t_tilde]:
                t_tilde = t
            if truncated:
                break
            if scheduled_threshold(lambda0, config.kappa, t) < config.phase_two_factor * sigma_bar / sqrt_n:
                break
            if t >= config.max_iterations:
                truncated = True
                self.log_warning(f"max_iterations={config.max_iterations} atingido na fase 2")
                break
            advance()

        horizon = t
        records = tuple(
            IterationRecord(
                t=k,
                lambda_t=lambda_k,
                sigma_t=math.sqrt(rss_k / n),
                element_support_size=beta_k.element_count,
                group_support_size=beta_k.group_count,
                rss=rss_k,
                criterion_value=criteria.get(k),
                rank_deficient=rank_k,
            )
            for k, (lambda_k, beta_k, rss_k, rank_k) in enumerate(history)
        )
        path = tuple(entry[1].values for entry in history) if config.keep_path else None
        trace = SolverTrace(records=records, t_bar=t_bar, horizon=horizon, t_tilde=t_tilde, path=path)

        selected = history[t_tilde][1]
        self.log_info(
            f"s0={s0}: t_bar={t_bar}, T={horizon}, t_tilde={t_tilde}, "
            f"|S|={selected.element_count}, |G|={selected.group_count}"
        )
        return FitResult(
            coefficients=selected,
            coefficients_original_scale=selected.values * data.column_scales,
            coefficients_at_bar=at_bar,
            trace=trace,
            sigma_bar=sigma_bar,
            s0_used=s0,
            truncated=truncated,
            rank_deficient=any(entry[3] for entry in history),
        )

    def _step(
        self,
        data: Dataset,
        groups: GroupStructure,
        iterate: SparseCoefficients,
        lambda_t: float,
        s0: int,
        ridge: float,
    ) -> tuple[SparseCoefficients, float, bool]:
        """Um passo: limiar sobre o ponto de chegada do gradiente e projeção no novo suporte."""
        landing = gradient_step(iterate, data)
        thresholded = double_sparse_threshold(landing, ThresholdParams(lambda_=lambda_t, s0=s0), groups)
        if not self.config.debias:
            return thresholded, residual_sum_of_squares(data, thresholded), False
        projection = project_least_squares(data, groups, thresholded.support, ridge)
        return projection.coefficients, projection.rss, projection.rank_deficient

    def _criterion(
        self,
        iterate: SparseCoefficients,
        rss: float,
        sigma_bar: float,
        s0: int,
        groups: GroupStructure,
        n: int,
    ) -> float:
        try:
            complexity = omega_from_norm(double_sparse_norm(iterate, s0), s0, groups.m, groups.d)
        except InvalidStateError as e:
            self.log_warning(f"Iterado inviável para Omega ({e}); C_t = inf")
            return math.inf
        return rss / n + self.config.criterion_constant * sigma_bar**2 * complexity / n

    def _zero_fit(self, zero: SparseCoefficients, s0: int, data: Dataset) -> FitResult:
        record = IterationRecord(
            t=0, lambda_t=0.0, sigma_t=0.0, element_support_size=0, group_support_size=0,
            rss=0.0, criterion_value=0.0,
        )
        path = (zero.values,) if self.config.keep_path else None
        trace = SolverTrace(records=(record,), t_bar=0, horizon=0, t_tilde=0, path=path)
        return FitResult(
            coefficients=zero,
            coefficients_original_scale=np.zeros(data.p),
            coefficients_at_bar=zero,
            trace=trace,
            sigma_bar=0.0,
            s0_used=s0,
            degenerate_response=True,
        )


def dsiht_fit(data: Dataset, groups: GroupStructure, config: SolverConfig) -> FitResult:
    """Atalho funcional para DSIHTSolver(config).fit(data, groups)."""
    return DSIHTSolver(config).fit(data, groups)


def predict(fit: FitResult, raw_design: np.ndarray, reference: Dataset) -> np.ndarray:
    """
    Valores ajustados para um design bruto, aplicando a mesma centralização do ajuste.

    Args:
        fit: Resultado do ajuste
        raw_design: Matriz bruta (mesmas colunas do treino, ordem contígua)
        reference: Dataset de treino (médias e escalas)
    """
    design = np.asarray(raw_design, dtype=float)
    if reference.column_means is not None:
        design = design - reference.column_means
    return design @ fit.coefficients_original_scale + reference.response_mean


def residual_quantiles(fit: FitResult, data: Dataset) -> pd.DataFrame:
    """Dados de QQ-plot dos resíduos (quantis teóricos normais vs amostrais)."""
    support = np.asarray(fit.coefficients.support, dtype=int)
    residuals = data.response - data.design[:, support] @ fit.coefficients.values[support]
    (theoretical, ordered), _ = scipy.stats.probplot(residuals, dist="norm")
    return pd.DataFrame({"theoretical": theoretical, "sample": ordered})
