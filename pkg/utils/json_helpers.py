"""Utilitários para serializar resultados em JSON estável e ler JSON com diagnóstico."""

import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np

from utils.errors import ParseError

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """
    Converte tipos numpy (arrays, inteiros, floats) em tipos nativos, recursivamente.

    Floats saem como float do Python: `json.dumps` usa repr, que é a menor
    representação que faz round-trip exato.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, float) and value == 0.0 and math.copysign(1.0, value) < 0:
        # -0.0 e 0.0 devem sair iguais
        return 0.0
    return value


def dumps_stable(data: Any) -> str:
    """JSON com indentação fixa e newline final (saída byte-estável)."""
    return json.dumps(to_jsonable(data), ensure_ascii=False, indent=2) + "\n"


def safe_json_parse(content: str, source: str | Path = "<string>") -> Any:
    """
    Faz parse de JSON convertendo erros em ParseError com linha/coluna.

    Args:
        content: Texto JSON
        source: Caminho (ou rótulo) usado na mensagem de erro

    Raises:
        ParseError: JSON inválido
    """
    try:
        return json.loads(content)
    except json.JSONDecodeError as e:
        logger.error(f"JSON inválido em {source}: {e.msg}")
        raise ParseError(source, e.msg, line=e.lineno, column=e.colno) from e


def load_json_file(path: str | Path) -> Any:
    """Lê e faz parse de um arquivo JSON (FileNotFoundError se não existir)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Arquivo não encontrado: {path}")
    return safe_json_parse(path.read_text(encoding="utf-8"), path)
