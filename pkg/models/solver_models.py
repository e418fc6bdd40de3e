"""Pydantic models de configuração, trajetória e resultado dos solvers."""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import (
    DEFAULT_CRITERION_CONSTANT,
    DEFAULT_KAPPA,
    DEFAULT_MAX_ITERATIONS,
    INITIAL_THRESHOLD_CORRELATION_FACTOR,
    INITIAL_THRESHOLD_NOISE_FACTOR,
    PHASE_ONE_FACTOR,
    PHASE_TWO_FACTOR,
    PROJECTION_RIDGE_FACTOR,
    SOLVER_PRESETS,
)
from utils.errors import InvalidArgumentError
from models.sparse_models import SparseCoefficients

# "sgc": critério de grupo esparso (C_t no iterado escolhido); "ebic": EBIC clássico
ICKind = Literal["sgc", "ebic"]


class SolverConfig(BaseModel):
    """Todos os parâmetros ajustáveis de DSIHT/ADSIHT."""

    model_config = ConfigDict(frozen=True)

    kappa: float = Field(DEFAULT_KAPPA, gt=0, lt=1, description="Decaimento: lambda_{t+1} = sqrt(kappa) lambda_t")
    s0: int | None = Field(None, ge=1, description="Esparsidade dentro do grupo (None => grade adaptativa)")
    criterion_constant: float = Field(DEFAULT_CRITERION_CONSTANT, gt=0, description="Constante do critério C_t")
    initial_noise_factor: float = Field(
        INITIAL_THRESHOLD_NOISE_FACTOR, gt=0, description="Fator de sigma_0 sqrt(Delta'/n) em lambda_0"
    )
    initial_correlation_factor: float = Field(
        INITIAL_THRESHOLD_CORRELATION_FACTOR, gt=0, description="Fator de ||X^T y/n||_inf em lambda_0"
    )
    phase_one_factor: float = Field(
        PHASE_ONE_FACTOR, gt=0, description="Fase 1 segue enquanto lambda_t >= fator sigma_t sqrt(Delta'/n)"
    )
    phase_two_factor: float = Field(
        PHASE_TWO_FACTOR, gt=0, description="Fase 2 segue enquanto lambda_t >= fator sigma_bar / sqrt(n)"
    )
    phase_one_requires_support: bool = Field(
        False, description="Não encerrar a fase 1 enquanto o iterado for nulo"
    )
    max_iterations: int = Field(DEFAULT_MAX_ITERATIONS, ge=1, description="Guarda de iterações (ambas as fases)")
    projection_ridge: float | None = Field(
        None, ge=0, description="Ridge de fallback da projeção (None => 1e-10 * n)"
    )
    center: bool = Field(False, description="Centralizar colunas e resposta (fora da teoria)")
    keep_path: bool = Field(False, description="Guardar todos os iterados na trajetória")
    debias: bool = Field(True, description="Aplicar a projeção de mínimos quadrados a cada passo")

    @classmethod
    def from_preset(cls, name: str, **overrides) -> "SolverConfig":
        """Configuração a partir de um conjunto nomeado de constantes ('theory' ou 'practical')."""
        if name not in SOLVER_PRESETS:
            raise InvalidArgumentError(f"Conjunto de constantes desconhecido: {name!r} (use {sorted(SOLVER_PRESETS)})")
        return cls.model_validate(SOLVER_PRESETS[name] | overrides)

    def ridge_for(self, n: int) -> float:
        """Ridge efetivo para uma amostra de tamanho n."""
        if self.projection_ridge is not None:
            return self.projection_ridge
        return PROJECTION_RIDGE_FACTOR * n


class LeastSquaresProjection(BaseModel):
    """Resultado da projeção de mínimos quadrados sobre um suporte."""

    model_config = ConfigDict(frozen=True)

    coefficients: SparseCoefficients
    rss: float = Field(..., ge=0)
    rank_deficient: bool = False


class IterationRecord(BaseModel):
    """Um iterado da trajetória (t, lambda_t, sigma_t, suportes, RSS, C_t)."""

    model_config = ConfigDict(frozen=True)

    t: int = Field(..., ge=0)
    lambda_t: float = Field(..., ge=0)
    sigma_t: float = Field(..., ge=0)
    element_support_size: int = Field(..., ge=0)
    group_support_size: int = Field(..., ge=0)
    rss: float = Field(..., ge=0)
    criterion_value: float | None = None
    rank_deficient: bool = False


class SolverTrace(BaseModel):
    """Trajetória completa: registros por iteração e tempos de parada t_bar, T, t_tilde."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    records: tuple[IterationRecord, ...] = Field(..., min_length=1)
    t_bar: int = Field(..., ge=0)
    horizon: int = Field(..., ge=0, description="Horizonte de busca T")
    t_tilde: int = Field(..., ge=0)
    path: tuple[np.ndarray, ...] | None = Field(None, description="beta_hat^t por iteração (keep_path)")

    @model_validator(mode="after")
    def validate_stopping_times(self) -> "SolverTrace":
        if [r.t for r in self.records] != list(range(len(self.records))):
            raise ValueError("records deve conter t = 0, 1, 2, ... em ordem")
        if not (self.t_bar <= self.t_tilde <= self.horizon < len(self.records)):
            raise ValueError(
                f"Esperado t_bar <= t_tilde <= T: {self.t_bar}, {self.t_tilde}, {self.horizon}"
            )
        for record in self.records:
            in_window = self.t_bar <= record.t <= self.horizon
            if in_window != (record.criterion_value is not None):
                raise ValueError(f"C_t deve existir exatamente em [t_bar, T] (t={record.t})")
        for previous, current in zip(self.records, self.records[1:]):
            if current.lambda_t >= previous.lambda_t:
                raise ValueError(f"lambda_t deve decrescer estritamente (t={current.t})")
        if self.path is not None and len(self.path) != len(self.records):
            raise ValueError("path deve ter um iterado por registro")
        return self

    @property
    def selected(self) -> IterationRecord:
        return self.records[self.t_tilde]

    def thresholds(self) -> np.ndarray:
        return np.array([r.lambda_t for r in self.records])


class FitResult(BaseModel):
    """Estimativa selecionada por DSIHT e sua trajetória."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: SparseCoefficients = Field(..., description="beta_hat^{t_tilde} na escala padronizada")
    coefficients_original_scale: np.ndarray = Field(..., description="coefficients * column_scales")
    coefficients_at_bar: SparseCoefficients = Field(..., description="beta_hat^{t_bar} (parada sub-ótima)")
    trace: SolverTrace
    sigma_bar: float = Field(..., ge=0)
    s0_used: int = Field(..., ge=1)
    truncated: bool = Field(False, description="max_iterations atingido")
    rank_deficient: bool = Field(False, description="Alguma projeção usou o ridge de fallback")
    degenerate_response: bool = Field(False, description="lambda_0 = 0 (resposta nula)")

    @property
    def criterion_value(self) -> float:
        value = self.trace.selected.criterion_value
        return float("inf") if value is None else value

    @property
    def rss(self) -> float:
        return self.trace.selected.rss


class CandidateSummary(BaseModel):
    """Diagnóstico de um candidato s0 da grade adaptativa."""

    model_config = ConfigDict(frozen=True)

    s0: int
    ic_value: float
    criterion_value: float
    element_support_size: int
    group_support_size: int
    t_bar: int
    horizon: int
    t_tilde: int
    sigma_bar: float
    truncated: bool = False
    interpolating: bool = Field(False, description="RSS = 0 (EBIC vira -inf)")


class AdaptiveResult(BaseModel):
    """Resultado do ADSIHT: melhor ajuste e tabela completa de candidatos."""

    model_config = ConfigDict(frozen=True)

    best: FitResult
    per_candidate: tuple[CandidateSummary, ...] = Field(..., min_length=1)
    ic_kind: ICKind

    @property
    def selected_s0(self) -> int:
        return self.best.s0_used
