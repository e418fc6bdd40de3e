"""Métricas de recuperação: SE, GSE, MCC e EE."""

import math

import numpy as np

from models.experiment_models import MetricsRow
from models.sparse_models import SparseCoefficients
from utils.errors import InvalidArgumentError


def matthews_correlation(estimated: set[int], truth: set[int], p: int) -> float:
    """MCC sobre as p posições; 0 quando algum fator do denominador é nulo."""
    tp = len(estimated & truth)
    fp = len(estimated - truth)
    fn = len(truth - estimated)
    tn = p - tp - fp - fn
    denominator = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denominator == 0:
        return 0.0
    value = (tp * tn - fp * fn) / math.sqrt(denominator)
    return min(1.0, max(-1.0, value))


def compute_metrics(estimate: SparseCoefficients, truth: SparseCoefficients) -> MetricsRow:
    """
    Compara uma estimativa com o vetor verdadeiro na mesma escala.

    Raises:
        InvalidArgumentError: Dimensões ou estruturas de grupo diferentes
    """
    if estimate.groups.group_sizes != truth.groups.group_sizes:
        raise InvalidArgumentError(
            f"Estruturas incompatíveis: p={estimate.groups.p} vs p={truth.groups.p}"
        )

    return MetricsRow(
        se=estimate.element_count - truth.element_count,
        gse=estimate.group_count - truth.group_count,
        mcc=matthews_correlation(set(estimate.support), set(truth.support), truth.groups.p),
        ee=float(np.linalg.norm(estimate.values - truth.values)),
    )
