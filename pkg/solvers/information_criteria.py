"""Critérios de informação para comparar candidatos s0 da grade adaptativa."""

import logging
import math

from scipy.special import gammaln

from config import DEFAULT_EBIC_GAMMA
from models.solver_models import FitResult, ICKind
from models.sparse_models import Dataset, GroupStructure
from solvers.dsiht_solver import residual_sum_of_squares
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


def log_binomial(p: int, k: int) -> float:
    """log C(p, k) via gammaln (estável para p grande)."""
    return float(gammaln(p + 1) - gammaln(k + 1) - gammaln(p - k + 1))


def ebic(
    fit: FitResult,
    data: Dataset,
    groups: GroupStructure,
    gamma: float = DEFAULT_EBIC_GAMMA,
) -> float:
    """
    EBIC = n log(RSS/n) + k log n + 2 gamma log C(p, k), com k = ||beta_hat||_0.

    Args:
        fit: Ajuste produzido sobre `data`
        data: Dataset padronizado
        groups: Estrutura de grupos (define p)
        gamma: Peso do termo combinatório, em [0, 1]

    Returns:
        Valor do EBIC; -inf quando RSS = 0 (ajuste interpolante)
    """
    if not 0.0 <= gamma <= 1.0:
        raise InvalidArgumentError(f"gamma deve estar em [0, 1], recebido {gamma}")

    n = data.n
    k = fit.coefficients.element_count
    rss = residual_sum_of_squares(data, fit.coefficients)
    if rss == 0.0:
        logger.warning(f"⚠️  RSS = 0 para s0={fit.s0_used} (ajuste interpolante): EBIC = -inf")
        return -math.inf

    return n * math.log(rss / n) + k * math.log(n) + 2.0 * gamma * log_binomial(groups.p, k)


def sparse_group_criterion(fit: FitResult) -> float:
    """C_{t_tilde} do próprio candidato."""
    return fit.criterion_value


def information_criterion(
    kind: ICKind,
    fit: FitResult,
    data: Dataset,
    groups: GroupStructure,
    gamma: float = DEFAULT_EBIC_GAMMA,
) -> float:
    """Despacha para o critério escolhido."""
    if kind == "sgc":
        return sparse_group_criterion(fit)
    if kind == "ebic":
        return ebic(fit, data, groups, gamma)
    raise InvalidArgumentError(f"Critério desconhecido: {kind}")
