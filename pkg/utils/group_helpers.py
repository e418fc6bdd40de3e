"""
Utilitários centralizados para estrutura de grupos e contagens de dupla esparsidade.

Todos os logaritmos são naturais: as constantes log(em/s), log(ed/s0) só fazem
sentido com base e.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from models.sparse_models import GroupStructure, SparseCoefficients
from utils.errors import InvalidArgumentError, InvalidStateError

logger = logging.getLogger(__name__)


def build_groups(group_sizes: Sequence[int]) -> GroupStructure:
    """
    Constrói a estrutura de grupos contíguos a partir dos tamanhos.

    Args:
        group_sizes: Tamanho p_j de cada grupo (todos >= 1)

    Returns:
        GroupStructure com offsets, m, d e p calculados

    Raises:
        InvalidArgumentError: Lista vazia ou tamanho não positivo
    """
    sizes = [int(size) for size in group_sizes]
    if not sizes:
        raise InvalidArgumentError("Lista de tamanhos de grupo vazia")
    for j, size in enumerate(sizes):
        if size < 1:
            raise InvalidArgumentError(f"Grupo {j} com tamanho inválido: {size}")
    return GroupStructure(group_sizes=tuple(sizes))


def groups_from_membership(membership: Sequence[int]) -> GroupStructure:
    """
    Constrói grupos a partir do rótulo de grupo de cada coluna.

    As colunas são permutadas para ordem contígua (estável dentro de cada grupo,
    grupos ordenados pelo rótulo) e a permutação fica registrada na estrutura.

    Args:
        membership: Rótulo de grupo por coluna, na ordem original

    Returns:
        GroupStructure com `permutation[k]` = coluna original na posição k
        e `labels[j]` = rótulo do grupo contíguo j
    """
    labels = list(membership)
    if not labels:
        raise InvalidArgumentError("Lista de membership vazia")

    order = sorted(range(len(labels)), key=lambda i: (labels[i], i))
    sizes: list[int] = []
    previous = object()
    for i in order:
        if labels[i] != previous:
            sizes.append(0)
            previous = labels[i]
        sizes[-1] += 1

    distinct = tuple(dict.fromkeys(labels[i] for i in order))
    logger.debug(f"Membership com {len(sizes)} grupos, permutação registrada")
    return GroupStructure(group_sizes=tuple(sizes), permutation=tuple(order), labels=distinct)


def double_sparse_norm(beta: SparseCoefficients, s0: int) -> float:
    """||beta||_G = max(||beta||_{0,2}, ||beta||_0 / s0), possivelmente fracionário."""
    if s0 < 1:
        raise InvalidArgumentError(f"s0 deve ser >= 1, recebido {s0}")
    return max(float(beta.group_count), beta.element_count / s0)


def omega_from_norm(norm_g: float, s0: int, m: int, d: int) -> float:
    """Omega avaliado diretamente a partir de ||beta||_G."""
    if norm_g == 0:
        return 0.0
    if norm_g > m:
        raise InvalidStateError(f"||beta||_G = {norm_g} excede m = {m}")
    return norm_g * math.log(math.e * m / norm_g) + s0 * norm_g * math.log(math.e * d / s0)


def omega(beta: SparseCoefficients, s0: int, m: int, d: int) -> float:
    """
    Funcional de complexidade de grupo esparso.

    Omega(beta) = ||beta||_G log(em/||beta||_G) + s0 ||beta||_G log(ed/s0),
    com Omega(0) = 0 pelo limite contínuo.

    Raises:
        InvalidArgumentError: s0 fora de [1, d]
        InvalidStateError: ||beta||_G > m
    """
    _check_s0(s0, d)
    return omega_from_norm(double_sparse_norm(beta, s0), s0, m, d)


def delta_constants(s: int | None, s0: int, m: int, d: int) -> tuple[float | None, float]:
    """
    Constantes de taxa Delta e Delta'.

    Delta  = (1/s0) log(em/s) + log(ed/s0)   (somente quando s é conhecido)
    Delta' = (1/s0) log(em)   + log(ed/s0)

    Returns:
        Tupla (Delta ou None, Delta')
    """
    _check_s0(s0, d)
    if s is not None and not 1 <= s <= m:
        raise InvalidArgumentError(f"s deve estar em [1, m={m}], recebido {s}")

    within = math.log(math.e * d / s0)
    delta_prime = math.log(math.e * m) / s0 + within
    delta = None if s is None else math.log(math.e * m / s) / s0 + within
    return delta, delta_prime


def group_squared_norms(values: np.ndarray, groups: GroupStructure) -> np.ndarray:
    """||v_{G_j}||^2 para cada grupo."""
    return np.add.reduceat(values * values, np.asarray(groups.offsets))


def _check_s0(s0: int, d: int) -> None:
    if not 1 <= s0 <= d:
        raise InvalidArgumentError(f"s0 deve estar em [1, d={d}], recebido {s0}")
