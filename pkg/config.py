"""Configurações do solver DSIHT/ADSIHT e do harness de simulação."""

import os
from pathlib import Path
from typing import Final

from dotenv import load_dotenv

# Carregar .env do diretório raiz do projeto
BASE_DIR = Path(__file__).parent
load_dotenv(dotenv_path=BASE_DIR / ".env", override=False)

# Parâmetros padrão do solver (Algoritmo DSIHT)
DEFAULT_KAPPA: Final[float] = 0.9  # passo da escala geométrica: lambda_{t+1} = sqrt(kappa) * lambda_t
DEFAULT_CRITERION_CONSTANT: Final[float] = 1000.0  # constante do critério C_t
DEFAULT_MAX_ITERATIONS: Final[int] = 500  # guarda contra não-terminação (ambas as fases)
PROJECTION_RIDGE_FACTOR: Final[float] = 1e-10  # ridge de fallback = fator * n
RANK_TOLERANCE: Final[float] = 1e-12  # lambda_min / lambda_max abaixo disso => posto deficiente

# Constantes teóricas do procedimento
INITIAL_THRESHOLD_NOISE_FACTOR: Final[float] = 100.0 / 9.0
INITIAL_THRESHOLD_CORRELATION_FACTOR: Final[float] = 19.0 / 4.0
PHASE_ONE_FACTOR: Final[float] = 8.0  # lambda_t >= 8 sigma_t sqrt(Delta') / sqrt(n)
PHASE_TWO_FACTOR: Final[float] = 4.0  # lambda_t >= 4 sigma_bar / sqrt(n)
PATH_BOUND_CONSTANT: Final[float] = 5.2
LOWER_BOUND_DENOMINATOR: Final[float] = 256.0
SUBOPTIMAL_BOUND_CONSTANT: Final[float] = 18.0 * (1.0 + 2.0**0.5)
OPTIMAL_BOUND_CONSTANT: Final[float] = 200.0
T0_STOPPING_FACTOR: Final[float] = 12.0
T_INFINITY_STOPPING_FACTOR: Final[float] = 4.0

# Constantes práticas: com as teóricas a fase 1 termina antes de qualquer variável
# entrar em amostras moderadas, sigma_bar fica ~ ||y||/sqrt(n) e C_t escolhe o nulo
PRACTICAL_PHASE_ONE_FACTOR: Final[float] = 2.0
PRACTICAL_PHASE_TWO_FACTOR: Final[float] = 2.0
PRACTICAL_CRITERION_CONSTANT: Final[float] = 6.0
SOLVER_PRESETS: Final[dict[str, dict[str, float | bool]]] = {
    "theory": {},
    "practical": {
        "phase_one_factor": PRACTICAL_PHASE_ONE_FACTOR,
        "phase_two_factor": PRACTICAL_PHASE_TWO_FACTOR,
        "criterion_constant": PRACTICAL_CRITERION_CONSTANT,
        "phase_one_requires_support": True,
    },
}
DEFAULT_SOLVER_PRESET: Final[str] = os.getenv("DSIHT_CONSTANTS", "theory")

# Seleção adaptativa de s0
DEFAULT_EBIC_GAMMA: Final[float] = 1.0
DENSE_GRID_MAX_D: Final[int] = 20  # d <= 20 => grade 1..d; acima disso, geométrica

# Oráculos de pequena escala
ENUMERATION_LIMIT: Final[int] = 10**7

# Simulação
DEFAULT_RHO: Final[float] = 0.5
DEFAULT_SEED: Final[int] = int(os.getenv("DSIHT_SEED", "20240611"))
DEFAULT_WORKERS: Final[int] = int(os.getenv("DSIHT_WORKERS", "0")) or (os.cpu_count() or 1)

# Arquivos e logging
OUTPUT_DIR: Final[Path] = BASE_DIR / "output"
PRESETS_PATH: Final[Path] = BASE_DIR / "presets" / "scenarios.yaml"
LOG_FILE: Final[str] = os.getenv("DSIHT_LOG_FILE", "dsiht_bench.log")
LOG_LEVEL: Final[str] = os.getenv("DSIHT_LOG_LEVEL", "INFO")
LOG_FORMAT: Final[str] = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# Códigos de saída da CLI (contrato estável para scripts de harness)
class ExitCode:
    """Códigos de saída possíveis da CLI."""
    SUCCESS = 0
    VALIDATION_ERROR = 2
    NUMERICAL_FAILURE = 3
