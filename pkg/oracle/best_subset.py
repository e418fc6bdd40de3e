"""Melhor subconjunto exato sobre todos os suportes de forma (s, s0)."""

import logging

import numpy as np
import scipy.linalg

from models.sparse_models import Dataset, GroupStructure, ShapeSpec, SparseCoefficients
from oracle.support_enumeration import enumerate_supports
from solvers.dsiht_solver import project_least_squares
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

RSS_TIE_TOLERANCE = 1e-10


def _support_rss(gram: np.ndarray, moments: np.ndarray, energy: float, index: list[int]) -> float:
    """RSS do ajuste de mínimos quadrados em S a partir da Gram pré-calculada."""
    if not index:
        return energy
    block = gram[np.ix_(index, index)]
    rhs = moments[index]
    try:
        coefficients = scipy.linalg.solve(block, rhs, assume_a="pos")
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
        coefficients = scipy.linalg.lstsq(block, rhs)[0]
    return energy - float(rhs @ coefficients)


def best_subset_oracle(data: Dataset, groups: GroupStructure, shape: ShapeSpec) -> SparseCoefficients:
    """
    Ajuste de mínimos quadrados do suporte de menor RSS entre todos os suportes da forma.

    Empates (RSS iguais até tolerância relativa de 1e-10) ficam com o suporte de menor
    cardinalidade e, entre estes, com o lexicograficamente menor (primeiro na enumeração).
    A cardinalidade vem antes porque a ordem lexicográfica põe superconjuntos antes do
    suporte verdadeiro: sem ruído, (0, 1, 2, 9) precede (0, 2, 9) com o mesmo RSS, e o
    ajuste devolveria coeficientes de arredondamento nos índices extras.

    Raises:
        EnumerationTooLargeError: Enumeração acima do limite
        InvalidArgumentError: Forma incompatível ou dimensões inconsistentes
    """
    if groups.p != data.p:
        raise InvalidArgumentError(f"Grupos cobrem p={groups.p}, design tem p={data.p}")

    gram = data.design.T @ data.design
    moments = data.design.T @ data.response
    energy = float(data.response @ data.response)

    tolerance = RSS_TIE_TOLERANCE * max(energy, np.finfo(float).tiny)
    best_support: tuple[int, ...] = ()
    best_rss = energy
    visited = 0
    for support in enumerate_supports(groups, shape):
        visited += 1
        rss = _support_rss(gram, moments, energy, list(support))
        improves = rss < best_rss - tolerance
        ties_smaller = abs(rss - best_rss) <= tolerance and len(support) < len(best_support)
        if improves or ties_smaller:
            best_rss = rss
            best_support = support

    logger.info(f"✓ Melhor subconjunto: {len(best_support)} elementos entre {visited} suportes")
    return project_least_squares(data, groups, best_support).coefficients
