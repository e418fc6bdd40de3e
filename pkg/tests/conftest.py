"""Fixtures compartilhadas: designs ortogonais, ajustes sintéticos e isolamento de arquivos."""

import math

import numpy as np
import pytest

from models.solver_models import FitResult, IterationRecord, SolverTrace
from models.sparse_models import Dataset, GroupStructure, SparseCoefficients
from utils.config_loader import ConfigLoader
from utils.group_helpers import build_groups
from utils.standardization import standardize


@pytest.fixture(autouse=True)
def isolated_workdir(tmp_path, monkeypatch):
    """Cada teste roda em diretório próprio (log e saídas da CLI não vazam)."""
    monkeypatch.chdir(tmp_path)
    ConfigLoader.clear_cache()
    yield
    ConfigLoader.clear_cache()


def orthonormal_columns(n: int, k: int, seed: int = 0) -> np.ndarray:
    """Matriz n x k com colunas ortonormais (QR de uma gaussiana)."""
    q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((n, k)))
    return q


def dataset_from(design: np.ndarray, response: np.ndarray) -> Dataset:
    """Dataset sem reescala (para designs já com ||X_j|| = sqrt(n))."""
    return Dataset(
        design=np.array(design, dtype=float),
        response=np.array(response, dtype=float),
        column_scales=np.ones(design.shape[1]),
    )


def make_fit(coefficients: SparseCoefficients, rss: float = 0.0) -> FitResult:
    """FitResult mínimo (um único registro) em torno de coeficientes dados."""
    record = IterationRecord(
        t=0,
        lambda_t=1.0,
        sigma_t=0.0,
        element_support_size=coefficients.element_count,
        group_support_size=coefficients.group_count,
        rss=rss,
        criterion_value=0.0,
    )
    trace = SolverTrace(records=(record,), t_bar=0, horizon=0, t_tilde=0)
    return FitResult(
        coefficients=coefficients,
        coefficients_original_scale=np.array(coefficients.values),
        coefficients_at_bar=coefficients,
        trace=trace,
        sigma_bar=0.0,
        s0_used=1,
    )


class OrthogonalProblem:
    """y = X beta* + ruído com X = sqrt(n) Q (X^T X = n I)."""

    def __init__(self, n: int, group_sizes: list[int], active: dict[int, float], noise: float, seed: int):
        self.groups: GroupStructure = build_groups(group_sizes)
        p = self.groups.p
        self.design = math.sqrt(n) * orthonormal_columns(n, p, seed)
        values = np.zeros(p)
        for index, value in active.items():
            values[index] = value
        self.beta = SparseCoefficients.from_values(values, self.groups)
        rng = np.random.default_rng(seed + 1)
        self.response = self.design @ values + noise * rng.standard_normal(n)
        self.data = standardize(self.design, self.response)


@pytest.fixture
def orthogonal_problem() -> OrthogonalProblem:
    """n=2000, grupos [3,3,3,3], dois grupos ativos com duas entradas de magnitude 5, ruído 0.1."""
    return OrthogonalProblem(
        n=2000,
        group_sizes=[3, 3, 3, 3],
        active={0: 5.0, 1: -5.0, 7: 5.0, 8: 5.0},
        noise=0.1,
        seed=7,
    )


@pytest.fixture
def small_groups() -> GroupStructure:
    return build_groups([3, 3, 3, 3])
