"""
Protocolo de replicação: gera dados com seeds derivados, ajusta, mede e agrega.

A replicação r usa seed = base_seed + r nos três geradores; replicações são
independentes e podem rodar em paralelo (merge na ordem das replicações).
"""

import asyncio
import logging
import time
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
import pandas as pd

from config import DEFAULT_EBIC_GAMMA
from models.experiment_models import (
    METRIC_NAMES,
    ExperimentReport,
    ExperimentScenario,
    MetricAggregate,
    MetricsRow,
    ReplicationFailure,
)
from models.solver_models import FitResult, ICKind, SolverConfig
from models.sparse_models import SparseCoefficients
from simulation.data_generators import gen_coefficients, gen_design, gen_response
from simulation.metrics import compute_metrics
from solvers.adaptive_solver import AdaptiveSolver
from solvers.dsiht_solver import DSIHTSolver
from utils.errors import InvalidArgumentError
from utils.standardization import standardize

logger = logging.getLogger(__name__)

REPLICATION_COLUMNS = ("scenario_id", "rep", "se", "gse", "mcc", "ee", "ee_original", "selected_s0", "runtime_seconds")


class ReplicationOutcome(NamedTuple):
    """Ajuste de uma replicação com o vetor verdadeiro na escala padronizada."""

    fit: FitResult
    truth: SparseCoefficients
    sigma: float
    row: MetricsRow


def run_replication(
    scenario: ExperimentScenario,
    solver: SolverConfig,
    rep: int,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    timings: bool = False,
) -> ReplicationOutcome:
    """
    Uma replicação completa: design AR(1), beta*, resposta, padronização, ajuste e métricas.

    Com `solver.s0` definido roda DSIHT com s0 fixo; senão roda ADSIHT na grade do cenário.
    """
    seed = scenario.base_seed + rep
    raw_design = gen_design(scenario.n, scenario.m, scenario.d, scenario.rho, seed)
    beta = gen_coefficients(scenario.m, scenario.d, scenario.s, scenario.s0, scenario.signal, seed)
    response, sigma = gen_response(raw_design, beta, scenario.rho, scenario.snr, seed)
    data = standardize(raw_design, response)
    groups = beta.groups

    started = time.perf_counter()
    if solver.s0 is not None:
        fit = DSIHTSolver(solver).fit(data, groups)
    else:
        fit = AdaptiveSolver(solver, ic_kind=ic_kind, gamma=gamma).fit(data, groups, scenario.s0_grid).best
    elapsed = time.perf_counter() - started

    # X_raw beta* = X_std (beta* / c)
    truth = SparseCoefficients.from_values(beta.values / data.column_scales, groups)
    metrics = compute_metrics(fit.coefficients, truth)
    row = metrics.model_copy(
        update={
            "rep": rep,
            "ee_original": float(np.linalg.norm(fit.coefficients_original_scale - beta.values)),
            "selected_s0": fit.s0_used,
            "runtime_seconds": elapsed if timings else None,
        }
    )
    return ReplicationOutcome(fit=fit, truth=truth, sigma=sigma, row=row)


def aggregate_rows(rows: Sequence[MetricsRow]) -> dict[str, MetricAggregate]:
    """Média e desvio padrão amostral (ddof=1; 0 com uma só linha) de cada métrica."""
    aggregate = {}
    for name in METRIC_NAMES:
        values = np.array([getattr(row, name) for row in rows if getattr(row, name) is not None], dtype=float)
        if values.size == 0:
            aggregate[name] = MetricAggregate.empty()
            continue
        sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        aggregate[name] = MetricAggregate(mean=float(np.mean(values)), sd=sd)
    return aggregate


def _failure(rep: int, error: BaseException) -> ReplicationFailure:
    logger.error(f"⚠️  Replicação {rep} falhou: {error}", exc_info=error)
    return ReplicationFailure(rep=rep, error_type=type(error).__name__, message=str(error))


def _build_report(
    scenario: ExperimentScenario, results: Sequence[MetricsRow | BaseException]
) -> ExperimentReport:
    rows = []
    failures = []
    for rep, result in enumerate(results):
        if isinstance(result, BaseException):
            failures.append(_failure(rep, result))
        else:
            rows.append(result)
    logger.info(
        f"✓ Cenário '{scenario.scenario_id}': {len(rows)} replicações ok, {len(failures)} falhas"
    )
    return ExperimentReport(
        scenario=scenario,
        rows=tuple(rows),
        aggregate=aggregate_rows(rows),
        failures=tuple(failures),
    )


async def run_experiment_async(
    scenario: ExperimentScenario,
    solver: SolverConfig,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    workers: int = 1,
    timings: bool = False,
) -> ExperimentReport:
    """Replicações em threads, limitadas por semáforo; falhas não abortam o lote."""
    semaphore = asyncio.Semaphore(max(1, workers))

    async def replicate_with_semaphore(rep: int) -> MetricsRow:
        async with semaphore:
            outcome = await asyncio.to_thread(
                run_replication, scenario, solver, rep, ic_kind, gamma, timings
            )
            return outcome.row

    tasks = [replicate_with_semaphore(rep) for rep in range(scenario.replications)]
    results = await asyncio.gather(*tasks, return_exceptions=True)
    return _build_report(scenario, results)


def run_experiment(
    scenario: ExperimentScenario,
    solver: SolverConfig,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    workers: int = 1,
    timings: bool = False,
) -> ExperimentReport:
    """
    Executa todas as replicações do cenário e agrega as métricas.

    Args:
        scenario: Cenário validado
        solver: Configuração do solver (s0 definido => DSIHT com s0 fixo)
        ic_kind: Critério do ADSIHT
        gamma: Peso do EBIC
        workers: Replicações simultâneas (<= 1 => sequencial)
        timings: Preencher runtime_seconds (deixa a saída não determinística)

    Returns:
        ExperimentReport com linhas, agregados e falhas
    """
    logger.info(
        f"🔁 Cenário '{scenario.scenario_id}': n={scenario.n}, m={scenario.m}, d={scenario.d}, "
        f"s={scenario.s}, s0={scenario.s0}, snr={scenario.snr}, {scenario.replications} replicações"
    )
    if workers > 1 and scenario.replications > 1:
        return asyncio.run(run_experiment_async(scenario, solver, ic_kind, gamma, workers, timings))

    results: list[MetricsRow | BaseException] = []
    for rep in range(scenario.replications):
        try:
            results.append(run_replication(scenario, solver, rep, ic_kind, gamma, timings).row)
        except Exception as e:
            results.append(e)
    return _build_report(scenario, results)


def _parse_number(token: str) -> int | float:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError as e:
        raise InvalidArgumentError(f"Valor de sweep inválido: {token!r}") from e


def parse_sweep(text: str) -> tuple[str, list[int | float]]:
    """
    Interpreta 'campo=a..b[:passo]' (intervalo inclusivo) ou 'campo=v1,v2,...'.

    Examples:
        'snr=1..10'        -> ('snr', [1, 2, ..., 10])
        'm=100..1200:100'  -> ('m', [100, 200, ..., 1200])
        'rho=0,0.3,0.6'    -> ('rho', [0, 0.3, 0.6])
    """
    field, sep, values_text = text.partition("=")
    field = field.strip()
    if not sep or not field or not values_text.strip():
        raise InvalidArgumentError(f"Sweep inválido: {text!r} (esperado campo=valores)")

    if ".." not in values_text:
        return field, [_parse_number(token) for token in values_text.split(",")]

    bounds, _, step_text = values_text.partition(":")
    start_text, _, stop_text = bounds.partition("..")
    start, stop = _parse_number(start_text), _parse_number(stop_text)
    step = _parse_number(step_text) if step_text else 1
    if step <= 0 or stop < start:
        raise InvalidArgumentError(f"Intervalo de sweep inválido: {values_text!r}")
    if all(isinstance(v, int) for v in (start, stop, step)):
        return field, list(range(start, stop + 1, step))
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return field, [start + k * step for k in range(count)]


def run_sweep(
    scenario: ExperimentScenario,
    field: str,
    values: Sequence[int | float],
    solver: SolverConfig,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    workers: int = 1,
    timings: bool = False,
) -> list[ExperimentReport]:
    """
    Varia um campo do cenário; um relatório (e uma linha agregada) por valor.

    Raises:
        InvalidArgumentError: Campo que não pertence ao cenário
        pydantic.ValidationError: Valor que invalida o cenário
    """
    if field not in ExperimentScenario.model_fields or field == "scenario_id":
        raise InvalidArgumentError(f"Campo de sweep desconhecido: {field}")

    reports = []
    for value in values:
        varied = ExperimentScenario.model_validate(
            scenario.model_dump() | {field: value, "scenario_id": f"{scenario.scenario_id}[{field}={value}]"}
        )
        reports.append(run_experiment(varied, solver, ic_kind, gamma, workers, timings))
    return reports


def report_frame(report: ExperimentReport) -> pd.DataFrame:
    """Uma linha por replicação seguida do bloco agregado (rep = 'mean' / 'sd')."""
    records = [
        {"scenario_id": report.scenario.scenario_id, **row.model_dump()} for row in report.rows
    ]
    for statistic in ("mean", "sd"):
        record: dict[str, object] = {"scenario_id": report.scenario.scenario_id, "rep": statistic}
        for name in METRIC_NAMES:
            record[name] = getattr(report.aggregate[name], statistic)
        records.append(record)
    return pd.DataFrame(records, columns=list(REPLICATION_COLUMNS), dtype=object)


def sweep_frame(field: str, reports: Sequence[ExperimentReport]) -> pd.DataFrame:
    """Uma linha agregada por valor do sweep (dados de curva)."""
    records = []
    for report in reports:
        record: dict[str, object] = {
            "scenario_id": report.scenario.scenario_id,
            "field": field,
            "value": getattr(report.scenario, field),
            "replications_ok": len(report.rows),
            "failures": len(report.failures),
        }
        for name in METRIC_NAMES:
            record[f"{name}_mean"] = report.aggregate[name].mean
            record[f"{name}_sd"] = report.aggregate[name].sd
        records.append(record)
    return pd.DataFrame(records, dtype=object)
