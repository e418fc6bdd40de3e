"""Pydantic models para cenários de simulação e métricas de recuperação."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import DEFAULT_RHO, DEFAULT_SEED

# "homogeneous": valores em {1, -1}; "heterogeneous": valores N(0, 1)
SignalKind = Literal["homogeneous", "heterogeneous"]

METRIC_NAMES: tuple[str, ...] = ("se", "gse", "mcc", "ee", "ee_original", "runtime_seconds")


class ExperimentScenario(BaseModel):
    """Uma configuração sintética (n, m, d, s, s0, rho, SNR, sinal) com seu protocolo de replicação."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario_id: str = Field("scenario", min_length=1)
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    s: int = Field(..., ge=1, description="Número verdadeiro de grupos ativos")
    s0: int = Field(..., ge=1, description="Elementos não nulos por grupo ativo")
    rho: float = Field(DEFAULT_RHO, ge=0, lt=1)
    snr: float = Field(..., gt=0)
    signal: SignalKind = "homogeneous"
    replications: int = Field(1, ge=1)
    base_seed: int = DEFAULT_SEED
    s0_grid: tuple[int, ...] | None = Field(None, description="Grade de s0 (None => padrão)")

    @model_validator(mode="after")
    def validate_sparsity(self) -> "ExperimentScenario":
        if self.s > self.m:
            raise ValueError(f"s={self.s} excede o número de grupos m={self.m}")
        if self.s0 > self.d:
            raise ValueError(f"s0={self.s0} excede o tamanho do grupo d={self.d}")
        return self

    @property
    def p(self) -> int:
        return self.m * self.d


class MetricsRow(BaseModel):
    """Métricas de uma replicação: SE, GSE, MCC, EE (e EE na escala original)."""

    model_config = ConfigDict(frozen=True)

    rep: int = Field(0, ge=0)
    se: int = Field(..., description="|S_hat| - |S*|")
    gse: int = Field(..., description="||beta_hat||_{0,2} - ||beta*||_{0,2}")
    mcc: float = Field(..., ge=-1.0, le=1.0)
    ee: float = Field(..., ge=0, description="||beta_hat - beta*|| na escala padronizada")
    ee_original: float | None = Field(None, ge=0, description="EE na escala original das colunas")
    runtime_seconds: float | None = Field(None, ge=0)
    selected_s0: int | None = None


class MetricAggregate(BaseModel):
    """Média e desvio padrão amostral de uma métrica."""

    model_config = ConfigDict(frozen=True)

    mean: float
    sd: float

    @classmethod
    def empty(cls) -> "MetricAggregate":
        return cls(mean=math.nan, sd=math.nan)


class ReplicationFailure(BaseModel):
    """Replicação que falhou (registrada sem abortar o lote)."""

    model_config = ConfigDict(frozen=True)

    rep: int
    error_type: str
    message: str


class ExperimentReport(BaseModel):
    """Linhas por replicação, agregados e falhas de um cenário."""

    model_config = ConfigDict(frozen=True)

    scenario: ExperimentScenario
    rows: tuple[MetricsRow, ...]
    aggregate: dict[str, MetricAggregate]
    failures: tuple[ReplicationFailure, ...] = ()


class BenchOutcome(BaseModel):
    """Resultado de uma verificação de aceitação do comando bench."""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    measured: dict[str, float] = Field(default_factory=dict)
    requirement: str = ""
    runtime_seconds: float = Field(0.0, ge=0)
