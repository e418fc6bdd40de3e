"""
Constantes de isometria restrita duplamente esparsa (DSRIP) por enumeração exata.

Os autovalores extremos de X_S^T X_S são atingidos em suportes maximais
(entrelaçamento de autovalores), então só eles são avaliados.
"""

import logging
import math
from typing import NamedTuple

import numpy as np
import scipy.linalg

from models.sparse_models import Dataset, GroupStructure, ShapeSpec
from oracle.support_enumeration import enumerate_supports, is_maximal
from utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


class DsripConstants(NamedTuple):
    """L(s, s0), U(s, s0) e c = 1 - L/U."""

    lower: float
    upper: float
    ratio: float


def dsrip_constants(data: Dataset, groups: GroupStructure, shape: ShapeSpec) -> DsripConstants:
    """
    Menor e maior autovalor de X_S^T X_S entre os suportes maximais da forma.

    Raises:
        InvalidArgumentError: Forma sem elementos (s = 0) ou dimensões inconsistentes
        EnumerationTooLargeError: Enumeração acima do limite
    """
    if groups.p != data.p:
        raise InvalidArgumentError(f"Grupos cobrem p={groups.p}, design tem p={data.p}")
    if shape.budget == 0:
        raise InvalidArgumentError("Forma vazia: autovalores restritos indefinidos")

    gram = data.design.T @ data.design
    lower = math.inf
    upper = -math.inf
    evaluated = 0
    for support in enumerate_supports(groups, shape):
        if not support or not is_maximal(support, groups, shape):
            continue
        index = list(support)
        eigenvalues = scipy.linalg.eigvalsh(gram[np.ix_(index, index)])
        lower = min(lower, max(float(eigenvalues[0]), 0.0))
        upper = max(upper, float(eigenvalues[-1]))
        evaluated += 1

    logger.info(
        f"✓ DSRIP (s={shape.s}, s0={shape.s0}): L={lower:.6g}, U={upper:.6g} "
        f"em {evaluated} suportes maximais"
    )
    return DsripConstants(lower=lower, upper=upper, ratio=1.0 - lower / upper)


def sparse_eigenvalue_max(data: Dataset, groups: GroupStructure, shape: ShapeSpec) -> float:
    """theta_max = sqrt(U(2s, 2s0) / n), com a forma dobrada limitada a (m, d)."""
    doubled = ShapeSpec(s=min(2 * shape.s, groups.m), s0=min(2 * shape.s0, groups.d))
    return math.sqrt(dsrip_constants(data, groups, doubled).upper / data.n)
