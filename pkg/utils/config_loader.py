"""Utilitário centralizado para carregar grupos, cenários e presets (JSON/YAML)."""

import logging
from pathlib import Path
from typing import Any

import yaml

from config import PRESETS_PATH
from models.experiment_models import ExperimentScenario
from models.sparse_models import GroupStructure
from utils.errors import InvalidArgumentError, ParseError
from utils.group_helpers import build_groups, groups_from_membership
from utils.json_helpers import load_json_file

logger = logging.getLogger(__name__)


class ConfigLoader:
    """Classe utilitária para carregar e cachear arquivos de configuração."""

    _presets_cache: dict[str, Any] | None = None

    @staticmethod
    def load_groups(path: str | Path) -> GroupStructure:
        """
        Lê a especificação de grupos.

        Formatos aceitos:
            {"sizes": [p_1, ..., p_m]}          grupos contíguos
            {"membership": [g_0, ..., g_{p-1}]}  rótulo de grupo por coluna

        Raises:
            ParseError: JSON inválido ou sem as chaves esperadas
        """
        data = load_json_file(path)
        if not isinstance(data, dict):
            raise ParseError(path, "esperado objeto JSON com 'sizes' ou 'membership'")
        try:
            if "sizes" in data:
                return build_groups(data["sizes"])
            if "membership" in data:
                return groups_from_membership(data["membership"])
        except (TypeError, ValueError) as e:
            raise ParseError(path, str(e)) from e
        raise ParseError(path, "esperado 'sizes' ou 'membership'")

    @staticmethod
    def load_scenario(path: str | Path) -> ExperimentScenario:
        """
        Lê um cenário (JSON ou YAML, pela extensão) e valida como ExperimentScenario.

        Raises:
            pydantic.ValidationError: Campos inválidos (lista todos os problemas)
        """
        path = Path(path)
        if path.suffix.lower() in (".yaml", ".yml"):
            data = ConfigLoader._load_yaml(path)
        else:
            data = load_json_file(path)
        if not isinstance(data, dict):
            raise ParseError(path, "cenário deve ser um objeto")
        data.setdefault("scenario_id", path.stem)
        return ExperimentScenario.model_validate(data)

    @staticmethod
    def load_presets() -> dict[str, Any]:
        """Carrega presets/scenarios.yaml com cache (seções 'scenarios' e 'sweeps')."""
        if ConfigLoader._presets_cache is None:
            data = ConfigLoader._load_yaml(PRESETS_PATH)
            ConfigLoader._presets_cache = {
                "scenarios": data.get("scenarios", {}),
                "sweeps": data.get("sweeps", {}),
            }
            logger.info(
                f"✓ Presets carregados: {len(ConfigLoader._presets_cache['scenarios'])} cenários, "
                f"{len(ConfigLoader._presets_cache['sweeps'])} sweeps"
            )
        return ConfigLoader._presets_cache

    @staticmethod
    def preset_scenario(name: str) -> ExperimentScenario:
        """Cenário nomeado do arquivo de presets (scenario_id = nome)."""
        scenarios = ConfigLoader.load_presets()["scenarios"]
        if name not in scenarios:
            raise InvalidArgumentError(
                f"Preset '{name}' não encontrado. Disponíveis: {', '.join(sorted(scenarios))}"
            )
        return ExperimentScenario.model_validate({"scenario_id": name, **scenarios[name]})

    @staticmethod
    def preset_sweep(name: str) -> tuple[ExperimentScenario, str]:
        """
        Sweep nomeado: cenário base e especificação 'campo=valores'.

        Returns:
            Tupla (cenário base, texto do sweep para parse_sweep)
        """
        sweeps = ConfigLoader.load_presets()["sweeps"]
        if name not in sweeps:
            raise InvalidArgumentError(
                f"Sweep '{name}' não encontrado. Disponíveis: {', '.join(sorted(sweeps))}"
            )
        entry = dict(sweeps[name])
        sweep = entry.pop("sweep")
        return ExperimentScenario.model_validate({"scenario_id": name, **entry}), sweep

    @staticmethod
    def _load_yaml(path: Path) -> dict[str, Any]:
        if not path.exists():
            raise FileNotFoundError(f"Arquivo não encontrado: {path}")
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise ParseError(
                path,
                str(getattr(e, "problem", e)),
                line=mark.line + 1 if mark else None,
                column=mark.column + 1 if mark else None,
            ) from e
        return data or {}

    @staticmethod
    def clear_cache():
        """Limpa o cache de presets. Útil para testes."""
        ConfigLoader._presets_cache = None
