"""
Leitura e escrita de CSV numérico.

Separador vírgula, ponto decimal, primeira linha opcionalmente cabeçalho
(detectado automaticamente). Escrita com repr dos floats para saída byte-estável.
"""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from utils.errors import ParseError

logger = logging.getLogger(__name__)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_numeric_csv(path: str | Path) -> tuple[np.ndarray, list[str] | None]:
    """
    Lê um CSV numérico em matriz float.

    Args:
        path: Caminho do arquivo

    Returns:
        Tupla (matriz n x k, cabeçalho ou None)

    Raises:
        FileNotFoundError: Arquivo inexistente
        ParseError: CSV malformado, vazio ou com célula não numérica/não finita
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Arquivo não encontrado: {path}")

    try:
        frame = pd.read_csv(path, header=None, dtype=str, sep=",", keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise ParseError(path, "arquivo vazio") from e
    except pd.errors.ParserError as e:
        raise ParseError(path, str(e).strip()) from e

    header = None
    line_offset = 1
    first_row = [str(cell).strip() for cell in frame.iloc[0]]
    if not all(_is_number(cell) for cell in first_row):
        header = first_row
        frame = frame.iloc[1:]
        line_offset = 2
    if frame.empty:
        raise ParseError(path, "nenhuma linha de dados")

    numeric = frame.apply(lambda column: pd.to_numeric(column.astype(str).str.strip(), errors="coerce"))
    values = numeric.to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        cell = frame.iat[row, col]
        raise ParseError(
            path,
            f"valor não numérico ou não finito: {cell!r}",
            line=row + line_offset,
            column=col + 1,
        )

    logger.debug(f"CSV lido: {path} ({values.shape[0]} x {values.shape[1]}, cabeçalho={header is not None})")
    return values, header


def read_response_csv(path: str | Path) -> np.ndarray:
    """Lê um vetor resposta (CSV de uma coluna)."""
    values, _ = read_numeric_csv(path)
    if values.shape[1] != 1:
        raise ParseError(path, f"resposta deve ter 1 coluna, encontradas {values.shape[1]}")
    return values[:, 0]


def select_column(
    values: np.ndarray, header: list[str] | None, column: str, path: str | Path
) -> tuple[np.ndarray, np.ndarray, int]:
    """
    Separa uma coluna (por nome do cabeçalho ou índice 0-based) do restante da matriz.

    Returns:
        Tupla (matriz sem a coluna, coluna, índice da coluna)
    """
    if header is not None and column in header:
        index = header.index(column)
    else:
        try:
            index = int(column)
        except ValueError as e:
            raise ParseError(path, f"coluna {column!r} não encontrada no cabeçalho") from e
    if not 0 <= index < values.shape[1]:
        raise ParseError(path, f"índice de coluna {index} fora de [0, {values.shape[1]})")
    return np.delete(values, index, axis=1), values[:, index].copy(), index


def frame_to_csv_text(frame: pd.DataFrame) -> str:
    """CSV com newline '\\n', sem índice, floats em repr e ausentes como campo vazio."""
    return frame.to_csv(index=False, lineterminator="\n", na_rep="")


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    """Escreve o DataFrame em CSV byte-estável."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(frame_to_csv_text(frame), encoding="utf-8")
    logger.info(f"✓ Salvo: {path}")
    return path
