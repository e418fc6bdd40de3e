"""
Operador de hard thresholding duplamente esparso T_{lambda,s0} = T2 o T1.

Passo 1 mantém entradas com |v_i| >= lambda; passo 2 mantém grupos com
||v_{G_j}||^2 >= s0 * lambda^2, calculado SOBRE a saída do passo 1.
Empates são mantidos nos dois passos.
"""

import numpy as np

from models.sparse_models import GroupStructure, SparseCoefficients, ThresholdParams
from utils.errors import InvalidArgumentError
from utils.group_helpers import group_squared_norms


def hard_threshold_elementwise(v: np.ndarray, lambda_: float) -> np.ndarray:
    """Zera as entradas com |v_i| < lambda."""
    v = np.asarray(v, dtype=float)
    return np.where(np.abs(v) >= lambda_, v, 0.0)


def hard_threshold_groupwise(
    v: np.ndarray, params: ThresholdParams, groups: GroupStructure
) -> np.ndarray:
    """Zera os grupos com ||v_{G_j}||^2 < s0 * lambda^2."""
    v = _check_dimension(v, groups)
    if params.s0 > groups.d:
        raise InvalidArgumentError(f"s0={params.s0} excede d={groups.d}")
    keep = group_squared_norms(v, groups) >= params.s0 * params.lambda_**2
    return np.where(np.repeat(keep, groups.group_sizes), v, 0.0)


def double_sparse_threshold(
    v: np.ndarray, params: ThresholdParams, groups: GroupStructure
) -> SparseCoefficients:
    """
    Aplica T_{lambda,s0}: limiar elemento a elemento e depois limiar de grupo.

    Args:
        v: Vetor de comprimento p
        params: lambda e s0
        groups: Estrutura de grupos

    Returns:
        SparseCoefficients com suportes calculados; entradas retidas são idênticas às de v
    """
    v = _check_dimension(v, groups)
    screened = hard_threshold_elementwise(v, params.lambda_)
    return SparseCoefficients.from_values(hard_threshold_groupwise(screened, params, groups), groups)


def _check_dimension(v: np.ndarray, groups: GroupStructure) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (groups.p,):
        raise InvalidArgumentError(f"Vetor com shape {v.shape}, esperado ({groups.p},)")
    return v
