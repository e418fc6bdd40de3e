#!/usr/bin/env python3
"""
Regressão duplamente esparsa por DSIHT/ADSIHT.

Subcomandos:
    fit       ajusta dados reais (CSV) e grava coeficientes em JSON
    simulate  roda cenários sintéticos replicados e grava métricas em CSV
    bench     executa as verificações de aceitação e informa passou/falhou
"""

import argparse
import logging
import sys

import numpy as np
import pandas as pd
from pydantic import ValidationError

from config import (
    DEFAULT_CRITERION_CONSTANT,
    DEFAULT_EBIC_GAMMA,
    DEFAULT_KAPPA,
    DEFAULT_SEED,
    DEFAULT_SOLVER_PRESET,
    DEFAULT_WORKERS,
    LOG_FILE,
    LOG_FORMAT,
    LOG_LEVEL,
    SOLVER_PRESETS,
    ExitCode,
)
from models.experiment_models import ExperimentScenario
from models.solver_models import AdaptiveResult, SolverConfig
from models.sparse_models import Dataset, GroupStructure
from simulation.benchmarks import BENCH_CHECKS, outcome_summary, run_bench
from simulation.experiment_runner import (
    parse_sweep,
    report_frame,
    run_experiment,
    run_sweep,
    sweep_frame,
)
from solvers.adaptive_solver import adsiht_fit
from solvers.dsiht_solver import residual_quantiles
from utils.config_loader import ConfigLoader
from utils.csv_helpers import frame_to_csv_text, read_numeric_csv, read_response_csv, select_column
from utils.errors import (
    EnumerationTooLargeError,
    InvalidArgumentError,
    InvalidStateError,
    NumericalError,
)
from utils.file_manager import ResultFileManager
from utils.standardization import standardize

logger = logging.getLogger(__name__)

VALIDATION_ERRORS = (InvalidArgumentError, ValidationError, FileNotFoundError)
NUMERICAL_ERRORS = (NumericalError, InvalidStateError, EnumerationTooLargeError, np.linalg.LinAlgError)


def setup_logging(verbose: bool = False):
    """Configura logging em arquivo e stderr (stdout fica livre para CSV)."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(LOG_FILE),
            logging.StreamHandler(sys.stderr),
        ],
        force=True,
    )


def parse_grid(text: str | None) -> list[int] | None:
    """'1,2,4' -> [1, 2, 4]."""
    if text is None:
        return None
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise InvalidArgumentError(f"Grade de s0 inválida: {text!r}") from e


def solver_config_from_args(args: argparse.Namespace, **extra) -> SolverConfig:
    """SolverConfig validada a partir das flags (flags ausentes ficam no padrão)."""
    overrides = {
        "kappa": args.kappa,
        "criterion_constant": args.ic_const,
        "max_iterations": args.max_iterations,
        **extra,
    }
    given = {k: v for k, v in overrides.items() if v is not None}
    return SolverConfig.from_preset(args.constants, **given)


def _write_or_print(frame: pd.DataFrame, out: str | None, files: ResultFileManager):
    if out:
        files.save_csv(frame, out)
    else:
        sys.stdout.write(frame_to_csv_text(frame))


# ---------------------------------------------------------------- fit


def load_fit_inputs(args: argparse.Namespace) -> tuple[np.ndarray, np.ndarray, list[str] | None, GroupStructure]:
    """Lê design, resposta e grupos; devolve o design já na ordem contígua dos grupos."""
    design, header = read_numeric_csv(args.x)
    if args.y_column is not None:
        design, response, index = select_column(design, header, args.y_column, args.x)
        if header is not None:
            header = header[:index] + header[index + 1 :]
    elif args.y is not None:
        response = read_response_csv(args.y)
    else:
        raise InvalidArgumentError("Informe --y ou --y-column")

    if response.shape[0] != design.shape[0]:
        raise InvalidArgumentError(
            f"Número de linhas diferente: X tem {design.shape[0]}, y tem {response.shape[0]}"
        )

    groups = ConfigLoader.load_groups(args.groups)
    if groups.p != design.shape[1]:
        raise InvalidArgumentError(
            f"Grupos cobrem {groups.p} colunas, design tem {design.shape[1]}"
        )
    if groups.permutation is not None:
        design = design[:, list(groups.permutation)]
    return design, response, header, groups


def to_original_order(values: np.ndarray, groups: GroupStructure) -> np.ndarray:
    """Desfaz a permutação de 'membership': posição k volta para a coluna permutation[k]."""
    if groups.permutation is None:
        return np.asarray(values)
    original = np.empty_like(values)
    original[list(groups.permutation)] = values
    return original


def fit_payload(
    result: AdaptiveResult, data: Dataset, groups: GroupStructure, header: list[str] | None
) -> dict:
    """Conteúdo do JSON de saída do comando fit."""
    best = result.best
    coefficients = to_original_order(best.coefficients_original_scale, groups)
    notes = []
    if best.degenerate_response:
        notes.append("degenerate response: lambda_0 = 0, modelo nulo")
    if best.truncated:
        notes.append("max_iterations atingido: resultado truncado")
    if best.rank_deficient:
        notes.append("projeção com posto deficiente: ridge de fallback usado")

    payload = {
        "coefficients": coefficients,
        "support": [int(i) for i in np.flatnonzero(coefficients)],
        "group_support": groups.original_labels(best.coefficients.group_support),
        "s0_selected": result.selected_s0,
        "sigma_bar": best.sigma_bar,
        "criterion_value": best.criterion_value,
        "ic_kind": result.ic_kind,
        "stopping_times": {
            "t_bar": best.trace.t_bar,
            "horizon": best.trace.horizon,
            "t_tilde": best.trace.t_tilde,
        },
        "ic_table": [candidate.model_dump() for candidate in result.per_candidate],
        "n": data.n,
        "p": data.p,
        "centered": data.column_means is not None,
        "notes": notes,
    }
    if header is not None:
        payload["column_names"] = header
    return payload


def trace_frame(result: AdaptiveResult) -> pd.DataFrame:
    """Uma linha por iteração do candidato escolhido."""
    rows = [
        {
            "t": r.t,
            "lambda": r.lambda_t,
            "sigma": r.sigma_t,
            "element_support_size": r.element_support_size,
            "group_support_size": r.group_support_size,
            "rss": r.rss,
            "criterion": r.criterion_value,
            "rank_deficient": r.rank_deficient,
        }
        for r in result.best.trace.records
    ]
    return pd.DataFrame(rows, dtype=object)


def cmd_fit(args: argparse.Namespace) -> int:
    """Ajusta ADSIHT (ou DSIHT com --s0) e grava JSON + CSVs opcionais."""
    design, response, header, groups = load_fit_inputs(args)
    data = standardize(design, response, center=args.center)
    config = solver_config_from_args(args, center=args.center)

    grid = [args.s0] if args.s0 is not None else parse_grid(args.s0_grid)
    result = adsiht_fit(
        data, groups, grid, config, ic_kind=args.ic, gamma=args.ebic_gamma, workers=args.workers
    )

    files = ResultFileManager(".")
    files.save_json(fit_payload(result, data, groups, header), args.out)
    if args.trace:
        files.save_csv(trace_frame(result), args.trace)
    if args.qq:
        files.save_csv(residual_quantiles(result.best, data), args.qq)

    if result.best.degenerate_response:
        logger.warning("⚠️  Resposta degenerada: modelo nulo emitido")
    logger.info(f"✓ Ajuste concluído: s0={result.selected_s0}, |S|={result.best.coefficients.element_count}")
    return ExitCode.SUCCESS


# ---------------------------------------------------------------- simulate


def resolve_scenario(args: argparse.Namespace) -> tuple[ExperimentScenario, str | None]:
    """Cenário (arquivo ou preset) com overrides de --reps/--seed/--s0-grid e o sweep pedido."""
    sweep = args.sweep
    if args.preset:
        presets = ConfigLoader.load_presets()
        if args.preset in presets["sweeps"]:
            scenario, preset_sweep = ConfigLoader.preset_sweep(args.preset)
            sweep = sweep or preset_sweep
        else:
            scenario = ConfigLoader.preset_scenario(args.preset)
    elif args.scenario:
        scenario = ConfigLoader.load_scenario(args.scenario)
    else:
        raise InvalidArgumentError("Informe um arquivo de cenário ou --preset")

    overrides = {"replications": args.reps, "base_seed": args.seed, "s0_grid": parse_grid(args.s0_grid)}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        scenario = ExperimentScenario.model_validate(scenario.model_dump() | overrides)
    return scenario, sweep


def cmd_simulate(args: argparse.Namespace) -> int:
    """Cenário replicado (ou sweep) com saída CSV determinística."""
    scenario, sweep = resolve_scenario(args)
    config = solver_config_from_args(args, s0=args.s0)
    files = ResultFileManager(".")
    options = {"ic_kind": args.ic, "gamma": args.ebic_gamma, "workers": args.workers, "timings": args.timings}

    if sweep:
        field, values = parse_sweep(sweep)
        reports = run_sweep(scenario, field, values, config, **options)
        _write_or_print(sweep_frame(field, reports), args.out, files)
        failed = all(not report.rows for report in reports)
    else:
        report = run_experiment(scenario, config, **options)
        _write_or_print(report_frame(report), args.out, files)
        failed = not report.rows

    if failed:
        logger.error("Todas as replicações falharam")
        return ExitCode.NUMERICAL_FAILURE
    return ExitCode.SUCCESS


# ---------------------------------------------------------------- bench


def cmd_bench(args: argparse.Namespace) -> int:
    """Verificações de aceitação; código 3 se alguma falhar."""
    outcomes = run_bench(quick=args.quick, only=args.only, seed=args.seed, workers=args.workers)
    for outcome in outcomes:
        print(outcome_summary(outcome))
    if args.out:
        ResultFileManager(".").save_json([o.model_dump() for o in outcomes], args.out)
    return ExitCode.SUCCESS if all(o.passed for o in outcomes) else ExitCode.NUMERICAL_FAILURE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsiht", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--verbose", action="store_true", help="Logging em nível DEBUG")
    commands = parser.add_subparsers(dest="command", required=True)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--kappa", type=float, help=f"Decaimento do limiar (padrão {DEFAULT_KAPPA})")
    solver.add_argument("--s0", type=int, help="s0 fixo (grade de um único candidato)")
    solver.add_argument("--s0-grid", help="Grade de s0 separada por vírgulas")
    solver.add_argument("--ic", choices=["sgc", "ebic"], default="sgc", help="Critério do ADSIHT")
    solver.add_argument("--ic-const", type=float, help=f"Constante do critério C_t (padrão {DEFAULT_CRITERION_CONSTANT:g})")
    solver.add_argument("--ebic-gamma", type=float, default=DEFAULT_EBIC_GAMMA, help="Peso gamma do EBIC")
    solver.add_argument("--max-iterations", type=int, help="Guarda de iterações")
    solver.add_argument(
        "--constants",
        choices=list(SOLVER_PRESETS),
        default=DEFAULT_SOLVER_PRESET,
        help="Constantes das fases e do critério: teóricas ou práticas (padrão: DSIHT_CONSTANTS ou theory)",
    )
    solver.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Tarefas simultâneas")

    fit = commands.add_parser("fit", parents=[solver], help="Ajusta dados em CSV")
    fit.add_argument("--x", required=True, help="CSV da matriz de design")
    fit.add_argument("--y", help="CSV da resposta (uma coluna)")
    fit.add_argument("--y-column", help="Coluna de --x usada como resposta (nome ou índice)")
    fit.add_argument("--groups", required=True, help="JSON com 'sizes' ou 'membership'")
    fit.add_argument("--out", required=True, help="JSON de saída")
    fit.add_argument("--trace", help="CSV da trajetória por iteração")
    fit.add_argument("--qq", help="CSV de quantis dos resíduos (QQ-plot)")
    fit.add_argument("--center", action="store_true", help="Centralizar colunas e resposta")
    fit.set_defaults(handler=cmd_fit)

    simulate = commands.add_parser("simulate", parents=[solver], help="Roda cenários sintéticos")
    simulate.add_argument("scenario", nargs="?", help="Cenário JSON/YAML")
    simulate.add_argument("--preset", help="Cenário ou sweep nomeado de presets/scenarios.yaml")
    simulate.add_argument("--reps", type=int, help="Número de replicações")
    simulate.add_argument("--seed", type=int, help="Seed base (padrão: DSIHT_SEED)")
    simulate.add_argument("--sweep", help="campo=a..b[:passo] ou campo=v1,v2,...")
    simulate.add_argument("--out", help="CSV de saída (padrão: stdout)")
    simulate.add_argument("--timings", action="store_true", help="Preencher runtime_seconds")
    simulate.set_defaults(handler=cmd_simulate)

    bench = commands.add_parser("bench", help="Verificações de aceitação")
    bench.add_argument("--quick", action="store_true", help="Menos replicações")
    bench.add_argument("--only", choices=list(BENCH_CHECKS), help="Executa só uma verificação")
    bench.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed base")
    bench.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Tarefas simultâneas")
    bench.add_argument("--out", help="JSON com os resultados")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Função principal; devolve o código de saída."""
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    try:
        return args.handler(args)
    except ValidationError as e:
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "<cenário>"
            logger.error(f"Campo inválido '{location}': {error['msg']}")
        return ExitCode.VALIDATION_ERROR
    except VALIDATION_ERRORS as e:
        logger.error(f"Erro de validação: {e}")
        return ExitCode.VALIDATION_ERROR
    except NUMERICAL_ERRORS as e:
        logger.error(f"Falha numérica: {e}", exc_info=True)
        return ExitCode.NUMERICAL_FAILURE


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("\nExecução interrompida pelo usuário")
        sys.exit(130)
