"""Padronização de colunas: ||X_j||_2 = sqrt(n) para todo j."""

import logging

import numpy as np

from models.sparse_models import Dataset
from utils.errors import DegenerateColumnError, InvalidArgumentError

logger = logging.getLogger(__name__)


def standardize(raw_design: np.ndarray, response: np.ndarray, center: bool = False) -> Dataset:
    """
    Reescala cada coluna para norma euclidiana sqrt(n).

    A padronização não centraliza por padrão. `center=True` remove as médias das
    colunas e da resposta antes de reescalar (uso em dados reais, fora da teoria).

    Args:
        raw_design: Matriz n x p bruta
        response: Vetor resposta de comprimento n
        center: Se True, centraliza colunas e resposta

    Returns:
        Dataset com column_scales c_j tal que coluna padronizada = c_j * coluna bruta

    Raises:
        DegenerateColumnError: Coluna identicamente nula (após centralização, se houver)
        InvalidArgumentError: Dimensões inconsistentes
    """
    design = np.array(raw_design, dtype=float, copy=True)
    y = np.array(response, dtype=float, copy=True)

    if design.ndim != 2 or design.shape[0] < 1 or design.shape[1] < 1:
        raise InvalidArgumentError(f"Matriz de design inválida: shape {design.shape}")
    n = design.shape[0]
    if y.shape != (n,):
        raise InvalidArgumentError(f"Resposta com shape {y.shape}, esperado ({n},)")
    if not (np.all(np.isfinite(design)) and np.all(np.isfinite(y))):
        raise InvalidArgumentError("Design ou resposta contém valores não finitos")

    column_means = None
    response_mean = 0.0
    if center:
        column_means = design.mean(axis=0)
        design -= column_means
        response_mean = float(y.mean())
        y -= response_mean

    norms = np.linalg.norm(design, axis=0)
    zero_columns = np.flatnonzero(norms == 0)
    if zero_columns.size:
        raise DegenerateColumnError(int(zero_columns[0]))

    scales = np.sqrt(n) / norms
    design *= scales
    logger.debug(f"Padronização: n={n}, p={design.shape[1]}, centralizado={center}")

    return Dataset(
        design=design,
        response=y,
        column_scales=scales,
        column_means=column_means,
        response_mean=response_mean,
    )


def unscale_design(data: Dataset) -> np.ndarray:
    """Desfaz a reescala (divide cada coluna por column_scales); não desfaz centralização."""
    return data.design / data.column_scales
