"""Utilitário para gerenciamento de arquivos de resultados (JSON/CSV)."""

import logging
from pathlib import Path
from typing import Any

import pandas as pd

from utils.csv_helpers import write_csv
from utils.json_helpers import dumps_stable, load_json_file

logger = logging.getLogger(__name__)


class ResultFileManager:
    """Responsável por salvar e carregar artefatos de ajuste e simulação."""

    def __init__(self, output_dir: str | Path = "output"):
        """
        Inicializa o gerenciador de arquivos.

        Args:
            output_dir: Diretório base para nomes relativos (caminhos absolutos são usados como estão)
        """
        self.output_dir = Path(output_dir)

    def resolve(self, filename: str | Path) -> Path:
        path = Path(filename)
        return path if path.is_absolute() or path.parent != Path(".") else self.output_dir / path

    def save_json(self, data: Any, filename: str | Path) -> Path:
        """
        Salva dados em JSON estável (indentação 2, floats em repr, newline final).

        Returns:
            Path do arquivo salvo
        """
        filepath = self.resolve(filename)
        filepath.parent.mkdir(parents=True, exist_ok=True)
        filepath.write_text(dumps_stable(data), encoding="utf-8")
        logger.info(f"✓ Salvo: {filepath}")
        return filepath

    def save_csv(self, frame: pd.DataFrame, filename: str | Path) -> Path:
        return write_csv(frame, self.resolve(filename))

    def load_json(self, filename: str | Path) -> Any:
        """
        Carrega dados de arquivo JSON.

        Raises:
            FileNotFoundError: Se arquivo não existe
            ParseError: Se arquivo não é JSON válido
        """
        return load_json_file(self.resolve(filename))

    def list_files(self, pattern: str = "*") -> list[Path]:
        """Lista arquivos no diretório de output (ordem alfabética)."""
        return sorted(self.output_dir.glob(pattern))
