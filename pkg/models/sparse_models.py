"""Pydantic models para estrutura de grupos, vetores duplamente esparsos e datasets."""

from collections.abc import Iterable
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _readonly(array: np.ndarray) -> np.ndarray:
    """Marca o array como somente leitura (modelos são imutáveis após construção)."""
    array.flags.writeable = False
    return array


class GroupStructure(BaseModel):
    """Partição contígua dos índices 0..p-1 em m grupos não sobrepostos."""

    model_config = ConfigDict(frozen=True)

    group_sizes: tuple[int, ...] = Field(..., min_length=1, description="Tamanho p_j de cada grupo")
    permutation: tuple[int, ...] | None = Field(
        None,
        description="Índice original de cada coluna na ordem contígua (quando veio de 'membership')",
    )
    labels: tuple[int | str, ...] | None = Field(
        None, description="Rótulo original de cada grupo contíguo (quando veio de 'membership')"
    )

    @field_validator("group_sizes")
    @classmethod
    def validate_sizes(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Todo grupo precisa ter pelo menos uma variável."""
        for j, size in enumerate(v):
            if size < 1:
                raise ValueError(f"Grupo {j} com tamanho inválido: {size} (esperado >= 1)")
        return v

    @model_validator(mode="after")
    def validate_permutation(self) -> "GroupStructure":
        if self.permutation is not None and sorted(self.permutation) != list(range(self.p)):
            raise ValueError("permutation deve ser uma permutação de 0..p-1")
        if self.labels is not None and len(self.labels) != self.m:
            raise ValueError(f"labels tem {len(self.labels)} rótulos para {self.m} grupos")
        return self

    @property
    def m(self) -> int:
        return len(self.group_sizes)

    @property
    def d(self) -> int:
        return max(self.group_sizes)

    @property
    def p(self) -> int:
        return sum(self.group_sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Índice inicial de cada grupo (soma cumulativa dos tamanhos)."""
        return tuple(int(x) for x in np.concatenate(([0], np.cumsum(self.group_sizes)[:-1])))

    @property
    def group_index(self) -> np.ndarray:
        """Vetor de comprimento p com o grupo de cada índice."""
        return np.repeat(np.arange(self.m), self.group_sizes)

    def group_slice(self, j: int) -> slice:
        start = self.offsets[j]
        return slice(start, start + self.group_sizes[j])

    def original_labels(self, group_indices: Iterable[int]) -> list[int | str]:
        """Rótulos de 'membership' dos grupos contíguos dados (o próprio índice sem rótulos)."""
        if self.labels is None:
            return [int(j) for j in group_indices]
        return [self.labels[j] for j in group_indices]


class SparseCoefficients(BaseModel):
    """Vetor de coeficientes com suporte elemento a elemento e por grupo sempre consistentes."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray = Field(..., description="Vetor denso de comprimento p")
    groups: GroupStructure
    support: tuple[int, ...] = Field(..., description="Índices com valor não nulo (ordenados)")
    group_support: tuple[int, ...] = Field(..., description="Grupos com algum valor não nulo (ordenados)")

    @model_validator(mode="after")
    def validate_bookkeeping(self) -> "SparseCoefficients":
        """Suporte e suporte de grupo devem coincidir exatamente com o padrão de não nulos."""
        if self.values.ndim != 1 or self.values.shape[0] != self.groups.p:
            raise ValueError(
                f"values deve ter comprimento p={self.groups.p}, recebido shape {self.values.shape}"
            )
        nonzero = np.flatnonzero(self.values)
        if tuple(int(i) for i in nonzero) != self.support:
            raise ValueError("support não coincide com os índices não nulos de values")
        active_groups = np.unique(self.groups.group_index[nonzero])
        if tuple(int(j) for j in active_groups) != self.group_support:
            raise ValueError("group_support não coincide com os grupos não nulos de values")
        _readonly(self.values)
        return self

    @classmethod
    def from_values(cls, values: np.ndarray, groups: GroupStructure) -> "SparseCoefficients":
        """Constrói a partir de um vetor denso, calculando os suportes."""
        dense = np.array(values, dtype=float, copy=True)
        if dense.ndim != 1 or dense.shape[0] != groups.p:
            raise ValueError(f"Esperado vetor de comprimento {groups.p}, recebido shape {dense.shape}")
        nonzero = np.flatnonzero(dense)
        active_groups = np.unique(groups.group_index[nonzero])
        return cls(
            values=dense,
            groups=groups,
            support=tuple(int(i) for i in nonzero),
            group_support=tuple(int(j) for j in active_groups),
        )

    @classmethod
    def zeros(cls, groups: GroupStructure) -> "SparseCoefficients":
        return cls.from_values(np.zeros(groups.p), groups)

    @property
    def element_count(self) -> int:
        """||beta||_0"""
        return len(self.support)

    @property
    def group_count(self) -> int:
        """||beta||_{0,2}"""
        return len(self.group_support)

    def is_zero(self) -> bool:
        return not self.support


class Dataset(BaseModel):
    """Resposta e matriz de design padronizada por coluna (||X_j|| = sqrt(n))."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    design: np.ndarray = Field(..., description="Matriz n x p padronizada")
    response: np.ndarray = Field(..., description="Vetor resposta de comprimento n")
    column_scales: np.ndarray = Field(..., description="Multiplicador c_j aplicado a cada coluna bruta")
    column_means: np.ndarray | None = Field(None, description="Médias removidas (somente com centralização)")
    response_mean: float = Field(0.0, description="Média removida da resposta (somente com centralização)")

    @model_validator(mode="after")
    def validate_shapes(self) -> "Dataset":
        if self.design.ndim != 2:
            raise ValueError(f"design deve ser 2D, recebido shape {self.design.shape}")
        n, p = self.design.shape
        if self.response.shape != (n,):
            raise ValueError(f"response deve ter comprimento n={n}, recebido {self.response.shape}")
        if self.column_scales.shape != (p,):
            raise ValueError(f"column_scales deve ter comprimento p={p}")
        if not np.all(self.column_scales > 0):
            raise ValueError("column_scales deve ser estritamente positivo")
        _readonly(self.design)
        _readonly(self.response)
        _readonly(self.column_scales)
        return self

    @property
    def n(self) -> int:
        return self.design.shape[0]

    @property
    def p(self) -> int:
        return self.design.shape[1]

    def with_response(self, response: np.ndarray) -> "Dataset":
        """Mesmo design, outra resposta (usado em testes de equivariância de escala)."""
        return self.model_copy(update={"response": _readonly(np.array(response, dtype=float))})


class ThresholdParams(BaseModel):
    """Parâmetros do operador T_{lambda, s0}."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambda_: float = Field(..., ge=0, alias="lambda", description="Limiar elemento a elemento")
    s0: int = Field(..., ge=1, description="Escala de esparsidade dentro do grupo")


class ShapeSpec(BaseModel):
    """Forma (s, s0): no máximo s grupos não nulos e no máximo s*s0 elementos."""

    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=0, description="Número máximo de grupos")
    s0: int = Field(..., ge=1, description="Escala do orçamento por grupo")

    @property
    def budget(self) -> int:
        return self.s * self.s0
