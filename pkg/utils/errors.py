"""Hierarquia de exceções do solver e do harness."""

import os


class DsihtError(Exception):
    """Base para todos os erros do projeto."""


class InvalidArgumentError(DsihtError, ValueError):
    """Argumento fora do domínio permitido (tamanhos, s0, grades, dimensões)."""


class DegenerateColumnError(InvalidArgumentError):
    """Coluna nula na matriz de design (não pode ser padronizada)."""

    def __init__(self, column_index: int):
        self.column_index = column_index
        super().__init__(f"Coluna {column_index} é identicamente nula e não pode ser padronizada")


class ParseError(InvalidArgumentError):
    """Falha de leitura de arquivo de entrada, com diagnóstico de arquivo/linha."""

    def __init__(self, path: str | os.PathLike, message: str, line: int | None = None, column: int | str | None = None):
        self.path = str(path)
        self.line = line
        self.column = column
        location = self.path
        if line is not None:
            location += f":{line}"
        if column is not None:
            location += f" (coluna {column})"
        super().__init__(f"{location}: {message}")


class InvalidStateError(DsihtError, RuntimeError):
    """Estado interno inconsistente (ex: ||beta||_G > m dentro de Omega)."""


class EnumerationTooLargeError(DsihtError):
    """Enumeração de suportes excede o limite configurado."""

    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"Enumeração recusada: {count} suportes excedem o limite de {limit}"
        )


class NumericalError(DsihtError, ArithmeticError):
    """Falha numérica (valores não finitos, sistema impossível de resolver)."""
