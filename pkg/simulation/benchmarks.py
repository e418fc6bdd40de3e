"""
Verificações de aceitação executadas pelo comando `bench`.

Cada verificação devolve um BenchOutcome com os valores medidos e o critério
usado; nenhuma levanta exceção por reprovação.
"""

import logging
import math
import time
from collections.abc import Callable

import numpy as np

from config import DEFAULT_SEED
from models.experiment_models import BenchOutcome, ExperimentScenario
from models.solver_models import SolverConfig
from models.sparse_models import GroupStructure, ShapeSpec, ThresholdParams
from oracle.best_subset import best_subset_oracle
from simulation.data_generators import gen_coefficients, gen_design, gen_response
from simulation.experiment_runner import report_frame, run_experiment, run_replication
from simulation.reference_bounds import iteration_bound, path_bound_holds
from solvers.adaptive_solver import adsiht_fit
from utils.csv_helpers import frame_to_csv_text
from utils.errors import InvalidArgumentError
from utils.group_helpers import build_groups, group_squared_norms
from utils.standardization import standardize
from utils.thresholding import double_sparse_threshold

logger = logging.getLogger(__name__)

# Regime de referência: n=500, m=250, d=20, 20 não nulos homogêneos em 4 grupos, SNR=5
REFERENCE_REGIME = {"n": 500, "m": 250, "d": 20, "s": 4, "s0": 5, "snr": 5.0, "signal": "homogeneous"}

# Constantes práticas: com as teóricas a fase 1 para antes de qualquer variável entrar
BENCH_CONSTANTS = "practical"


def bench_config(**overrides) -> SolverConfig:
    """SolverConfig do conjunto de constantes usado em todas as verificações."""
    return SolverConfig.from_preset(BENCH_CONSTANTS, **overrides)


def operator_violations(
    v: np.ndarray, lambda_: float, s0: int, groups: GroupStructure, scale: float
) -> list[str]:
    """
    Propriedades do operador T_{lambda,s0} para uma entrada; devolve as violadas.

    `scale` deve ser potência de 2 para a homogeneidade ser exata.
    """
    violations = []
    params = ThresholdParams(lambda_=lambda_, s0=s0)
    result = double_sparse_threshold(v, params, groups)
    kept = np.asarray(result.support, dtype=int)

    if not set(result.support) <= set(np.flatnonzero(v).tolist()):
        violations.append("shrinkage")
    if not np.array_equal(result.values[kept], v[kept]):
        violations.append("value_preservation")
    if kept.size and np.min(np.abs(v[kept])) < lambda_:
        violations.append("element_magnitude")
    norms = group_squared_norms(result.values, groups)
    if np.any(norms[list(result.group_support)] < s0 * lambda_**2):
        violations.append("group_magnitude")
    again = double_sparse_threshold(result.values, params, groups)
    if not np.array_equal(again.values, result.values):
        violations.append("idempotence")
    larger = double_sparse_threshold(v, ThresholdParams(lambda_=lambda_ * 1.5, s0=s0), groups)
    if not set(larger.support) <= set(result.support):
        violations.append("monotonicity")
    scaled = double_sparse_threshold(scale * v, ThresholdParams(lambda_=scale * lambda_, s0=s0), groups)
    if not np.allclose(scaled.values, scale * result.values, rtol=1e-12, atol=0.0):
        violations.append("homogeneity")
    return violations


def check_operator_properties(quick: bool = False, seed: int = DEFAULT_SEED) -> BenchOutcome:
    """10.000 casos aleatórios (v, lambda, s0, grupos) sem nenhuma violação."""
    cases = 1_000 if quick else 10_000
    rng = np.random.default_rng([seed, 10])
    failures: dict[str, int] = {}
    for _ in range(cases):
        sizes = rng.integers(1, 6, size=rng.integers(1, 8))
        groups = build_groups(sizes.tolist())
        v = rng.standard_normal(groups.p) * rng.choice([0.1, 1.0, 10.0])
        v[rng.random(groups.p) < 0.2] = 0.0
        lambda_ = float(rng.uniform(0.0, 2.0 * max(np.max(np.abs(v)), 1e-3)))
        s0 = int(rng.integers(1, groups.d + 1))
        scale = float(2.0 ** rng.integers(-4, 5))
        for name in operator_violations(v, lambda_, s0, groups, scale):
            failures[name] = failures.get(name, 0) + 1
    total = sum(failures.values())
    return BenchOutcome(
        name="operator_properties",
        passed=total == 0,
        measured={"cases": cases, "violations": total, **{f"violations_{k}": v for k, v in failures.items()}},
        requirement="zero violações",
    )


def check_oracle_equivalence(quick: bool = False, seed: int = DEFAULT_SEED) -> BenchOutcome:
    """n=60, 5 grupos de 4, (s, s0) = (2, 2), SNR=50: suporte do ADSIHT igual ao do oráculo."""
    seeds = 20 if quick else 100
    matches = 0
    shape = ShapeSpec(s=2, s0=2)
    for k in range(seeds):
        run_seed = seed + k
        raw = gen_design(60, 5, 4, 0.5, run_seed)
        beta = gen_coefficients(5, 4, 2, 2, "homogeneous", run_seed)
        response, _ = gen_response(raw, beta, 0.5, 50.0, run_seed)
        data = standardize(raw, response)
        fitted = adsiht_fit(data, beta.groups, config=bench_config()).best.coefficients
        oracle = best_subset_oracle(data, beta.groups, shape)
        matches += fitted.support == oracle.support
    fraction = matches / seeds
    return BenchOutcome(
        name="oracle_equivalence",
        passed=fraction >= 0.9,
        measured={"seeds": seeds, "matches": matches, "fraction": fraction},
        requirement="fração >= 0.90",
    )


def check_reference_table(quick: bool = False, seed: int = DEFAULT_SEED, workers: int = 1) -> BenchOutcome:
    """Regime de referência, 20 replicações: MCC >= 0.95, EE <= 0.60, |SE| <= 1.5, |GSE| <= 1."""
    scenario = ExperimentScenario(
        scenario_id="reference_table", replications=5 if quick else 20, base_seed=seed, **REFERENCE_REGIME
    )
    report = run_experiment(scenario, bench_config(), workers=workers)
    agg = report.aggregate
    measured = {name: agg[name].mean for name in ("mcc", "ee", "se", "gse")}
    passed = (
        not report.failures
        and measured["mcc"] >= 0.95
        and measured["ee"] <= 0.60
        and abs(measured["se"]) <= 1.5
        and abs(measured["gse"]) <= 1.0
    )
    return BenchOutcome(
        name="reference_table",
        passed=passed,
        measured=measured,
        requirement="MCC >= 0.95, EE <= 0.60, |SE| <= 1.5, |GSE| <= 1",
    )


def check_minimax_rate(quick: bool = False, seed: int = DEFAULT_SEED, workers: int = 1) -> BenchOutcome:
    """EE médio cai por um fator em [1.15, 1.75] quando n dobra (teoria: sqrt 2)."""
    replications = 5 if quick else 20
    mean_ee = {}
    for n in (400, 800, 1600):
        scenario = ExperimentScenario(
            scenario_id=f"rate_n{n}",
            replications=replications,
            base_seed=seed,
            **(REFERENCE_REGIME | {"n": n}),
        )
        mean_ee[n] = run_experiment(scenario, bench_config(), workers=workers).aggregate["ee"].mean
    ratios = {
        "ratio_400_800": mean_ee[400] / mean_ee[800],
        "ratio_800_1600": mean_ee[800] / mean_ee[1600],
    }
    passed = all(1.15 <= r <= 1.75 for r in ratios.values())
    return BenchOutcome(
        name="minimax_rate",
        passed=passed,
        measured={**{f"ee_n{n}": v for n, v in mean_ee.items()}, **ratios},
        requirement="razões em [1.15, 1.75]",
    )


def check_scale_equivariance(quick: bool = False, seed: int = DEFAULT_SEED) -> BenchOutcome:
    """fit(X, c y) = c fit(X, y): coeficientes (1e-8 relativo), suportes, tempos de parada e s0."""
    instances = 10 if quick else 50
    mismatches = 0
    worst = 0.0
    for k in range(instances):
        run_seed = seed + k
        raw = gen_design(100, 20, 5, 0.5, run_seed)
        beta = gen_coefficients(20, 5, 3, 2, "homogeneous", run_seed)
        response, _ = gen_response(raw, beta, 0.5, 5.0, run_seed)
        data = standardize(raw, response)
        base = adsiht_fit(data, beta.groups, config=bench_config())
        for c in (0.1, 3.0, 100.0):
            scaled = adsiht_fit(data.with_response(c * data.response), beta.groups, config=bench_config())
            expected = c * base.best.coefficients.values
            error = np.linalg.norm(scaled.best.coefficients.values - expected)
            relative = error / max(np.linalg.norm(expected), np.finfo(float).tiny)
            worst = max(worst, float(relative))
            same_trace = (
                (scaled.best.trace.t_bar, scaled.best.trace.horizon, scaled.best.trace.t_tilde)
                == (base.best.trace.t_bar, base.best.trace.horizon, base.best.trace.t_tilde)
            )
            if (
                relative > 1e-8
                or scaled.best.coefficients.support != base.best.coefficients.support
                or not same_trace
                or scaled.selected_s0 != base.selected_s0
            ):
                mismatches += 1
    return BenchOutcome(
        name="scale_equivariance",
        passed=mismatches == 0,
        measured={"instances": instances, "mismatches": mismatches, "worst_relative_error": worst},
        requirement="zero divergências",
    )


def _regime_outcomes(quick: bool, seed: int):
    scenario = ExperimentScenario(
        scenario_id="path_regime", replications=5 if quick else 20, base_seed=seed, **REFERENCE_REGIME
    )
    solver = bench_config(s0=scenario.s0, keep_path=True)
    return scenario, solver, [run_replication(scenario, solver, rep) for rep in range(scenario.replications)]


def check_path_bound(quick: bool = False, seed: int = DEFAULT_SEED) -> BenchOutcome:
    """>= 95% das replicações com ||beta^t - beta*|| <= 5.2 sqrt(s s0) lambda em toda a trajetória."""
    scenario, _, outcomes = _regime_outcomes(quick, seed)
    held = sum(path_bound_holds(o.fit, o.truth, scenario.s, scenario.s0) for o in outcomes)
    fraction = held / len(outcomes)
    return BenchOutcome(
        name="path_bound",
        passed=fraction >= 0.95,
        measured={"replications": len(outcomes), "held": held, "fraction": fraction},
        requirement="fração >= 0.95",
    )


def check_linear_convergence(quick: bool = False, seed: int = DEFAULT_SEED) -> BenchOutcome:
    """>= 95% das replicações com T <= 2 log(6 (sqrt(n)||beta*||/sigma v sqrt(log ep)))/log(1/kappa) + 1."""
    scenario, solver, outcomes = _regime_outcomes(quick, seed)
    held = 0
    for outcome in outcomes:
        bound = iteration_bound(
            scenario.n, float(np.linalg.norm(outcome.truth.values)), outcome.sigma, scenario.p, solver.kappa
        )
        held += outcome.fit.trace.horizon <= bound
    fraction = held / len(outcomes)
    return BenchOutcome(
        name="linear_convergence",
        passed=fraction >= 0.95,
        measured={"replications": len(outcomes), "held": held, "fraction": fraction},
        requirement="fração >= 0.95",
    )


def check_determinism(quick: bool = False, seed: int = DEFAULT_SEED, workers: int = 1) -> BenchOutcome:
    """Duas execuções do mesmo cenário produzem CSV byte a byte idêntico."""
    scenario = ExperimentScenario(
        scenario_id="determinism", n=120, m=20, d=5, s=3, s0=2, snr=10.0,
        replications=3 if quick else 5, base_seed=seed,
    )
    first = frame_to_csv_text(report_frame(run_experiment(scenario, bench_config(), workers=workers)))
    second = frame_to_csv_text(report_frame(run_experiment(scenario, bench_config(), workers=workers)))
    return BenchOutcome(
        name="determinism",
        passed=first == second,
        measured={"bytes": len(first.encode("utf-8"))},
        requirement="CSV idêntico",
    )


BENCH_CHECKS: dict[str, Callable[..., BenchOutcome]] = {
    "operator_properties": check_operator_properties,
    "oracle_equivalence": check_oracle_equivalence,
    "reference_table": check_reference_table,
    "minimax_rate": check_minimax_rate,
    "scale_equivariance": check_scale_equivariance,
    "path_bound": check_path_bound,
    "linear_convergence": check_linear_convergence,
    "determinism": check_determinism,
}
PARALLEL_CHECKS = {"reference_table", "minimax_rate", "determinism"}


def run_bench(
    quick: bool = False, only: str | None = None, seed: int = DEFAULT_SEED, workers: int = 1
) -> list[BenchOutcome]:
    """Executa as verificações (todas ou só `only`) e registra o tempo de cada uma."""
    if only is not None and only not in BENCH_CHECKS:
        raise InvalidArgumentError(f"Verificação desconhecida: {only}. Disponíveis: {', '.join(BENCH_CHECKS)}")
    names = [only] if only else list(BENCH_CHECKS)
    outcomes = []
    for name in names:
        check = BENCH_CHECKS[name]
        logger.info(f"🧪 Verificação '{name}' (quick={quick})")
        started = time.perf_counter()
        kwargs = {"quick": quick, "seed": seed}
        if name in PARALLEL_CHECKS:
            kwargs["workers"] = workers
        outcome = check(**kwargs)
        outcome = outcome.model_copy(update={"runtime_seconds": time.perf_counter() - started})
        status = "✓ PASSOU" if outcome.passed else "⚠️  FALHOU"
        logger.info(f"{status} {name}: {outcome.measured}")
        outcomes.append(outcome)
    return outcomes


def outcome_summary(outcome: BenchOutcome) -> str:
    """Linha legível: nome, status, medidas e critério."""
    measured = ", ".join(
        f"{k}={v:.4g}" if isinstance(v, float) and math.isfinite(v) else f"{k}={v}"
        for k, v in outcome.measured.items()
    )
    status = "PASS" if outcome.passed else "FAIL"
    return f"{status} {outcome.name}: {measured} [{outcome.requirement}] ({outcome.runtime_seconds:.1f}s)"
