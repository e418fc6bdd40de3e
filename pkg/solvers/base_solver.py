"""Classe base para os solvers do sistema."""

import logging

from models.solver_models import SolverConfig

logger = logging.getLogger(__name__)


class BaseSolver:
    """
    Classe base para solvers com funcionalidade comum.

    Centraliza:
    - Configuração congelada (SolverConfig) com overrides pontuais
    - Logging consistente com prefixo
    """

    def __init__(self, solver_name: str, config: SolverConfig | None = None, log_emoji: str = "🧮"):
        """
        Inicializa solver base.

        Args:
            solver_name: Nome do solver (ex: "DSIHT")
            config: Configuração (padrão: SolverConfig())
            log_emoji: Emoji para prefixo de log
        """
        self.solver_name = solver_name
        self.config = config or SolverConfig()
        self.log_prefix = f"[{solver_name}] {log_emoji}"

    def with_overrides(self, **updates) -> SolverConfig:
        """Cópia validada da configuração com campos substituídos (None é ignorado)."""
        merged = self.config.model_dump() | {k: v for k, v in updates.items() if v is not None}
        return SolverConfig.model_validate(merged)

    def log_debug(self, message: str):
        logger.debug(f"{self.log_prefix} {message}")

    def log_info(self, message: str):
        """Logging padronizado de informações."""
        logger.info(f"{self.log_prefix} {message}")

    def log_warning(self, message: str):
        """Logging padronizado de avisos."""
        logger.warning(f"{self.log_prefix} {message}")
