"""
Enumeração exaustiva dos suportes de forma (s, s0): no máximo s grupos não
nulos e no máximo s*s0 elementos no total.
"""

import logging
import math
from collections.abc import Iterator

import numpy as np

from config import ENUMERATION_LIMIT
from models.sparse_models import GroupStructure, ShapeSpec
from utils.errors import EnumerationTooLargeError, InvalidArgumentError

logger = logging.getLogger(__name__)


def check_shape(groups: GroupStructure, shape: ShapeSpec) -> None:
    """A forma precisa caber na estrutura: s <= m e s0 <= d."""
    if shape.s > groups.m or shape.s0 > groups.d:
        raise InvalidArgumentError(
            f"Forma (s={shape.s}, s0={shape.s0}) incompatível com m={groups.m}, d={groups.d}"
        )


def count_supports(groups: GroupStructure, shape: ShapeSpec) -> int:
    """
    Número exato de suportes da forma, por programação dinâmica sobre os grupos.

    Estado: (grupos usados, elementos usados) -> número de maneiras.
    """
    check_shape(groups, shape)
    budget = shape.budget
    ways = np.zeros((shape.s + 1, budget + 1), dtype=object)
    ways[0, 0] = 1

    for size in groups.group_sizes:
        updated = ways.copy()
        for used_groups in range(shape.s):
            for used_elements in range(budget):
                current = ways[used_groups, used_elements]
                if not current:
                    continue
                for k in range(1, min(size, budget - used_elements) + 1):
                    updated[used_groups + 1, used_elements + k] += current * math.comb(size, k)
        ways = updated

    return int(ways.sum())


def enumerate_supports(
    groups: GroupStructure, shape: ShapeSpec, limit: int = ENUMERATION_LIMIT
) -> Iterator[tuple[int, ...]]:
    """
    Todos os suportes da forma, cada um uma vez, em ordem lexicográfica
    (tuplas de índices crescentes; o vazio primeiro).

    Raises:
        EnumerationTooLargeError: contagem acima de `limit` (verificada antes de começar)
    """
    total = count_supports(groups, shape)
    if total > limit:
        raise EnumerationTooLargeError(total, limit)
    logger.debug(f"Enumerando {total} suportes (s={shape.s}, s0={shape.s0})")
    return _depth_first(groups.group_index, shape.s, shape.budget)


def _depth_first(group_index: np.ndarray, max_groups: int, budget: int) -> Iterator[tuple[int, ...]]:
    p = len(group_index)
    labels = [int(g) for g in group_index]

    def extend(prefix: tuple[int, ...], used_groups: int) -> Iterator[tuple[int, ...]]:
        yield prefix
        if len(prefix) == budget:
            return
        start = prefix[-1] + 1 if prefix else 0
        last_group = labels[prefix[-1]] if prefix else -1
        for i in range(start, p):
            # índices crescentes e grupos contíguos: grupo novo <=> rótulo diferente do último
            opens_group = labels[i] != last_group
            if opens_group and used_groups == max_groups:
                break
            yield from extend(prefix + (i,), used_groups + opens_group)

    return extend((), 0)


def is_maximal(support: tuple[int, ...], groups: GroupStructure, shape: ShapeSpec) -> bool:
    """Nenhum índice pode ser acrescentado sem violar a forma."""
    if len(support) >= shape.budget:
        return True
    active = {int(groups.group_index[i]) for i in support}
    room_in_active = sum(groups.group_sizes[j] for j in active) > len(support)
    can_open = len(active) < min(shape.s, groups.m)
    return not (room_in_active or can_open)
