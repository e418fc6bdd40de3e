"""
ADSIHT: varre uma grade de s0, roda DSIHT de forma independente em cada ponto
e escolhe o candidato de menor critério de informação.
"""

import asyncio
from collections.abc import Sequence

from config import DEFAULT_EBIC_GAMMA, DEFAULT_WORKERS, DENSE_GRID_MAX_D
from models.solver_models import AdaptiveResult, CandidateSummary, FitResult, ICKind, SolverConfig
from models.sparse_models import Dataset, GroupStructure
from solvers.base_solver import BaseSolver
from solvers.dsiht_solver import DSIHTSolver
from solvers.information_criteria import information_criterion
from utils.errors import InvalidArgumentError


def default_s0_grid(d: int) -> tuple[int, ...]:
    """1..d quando d <= 20; senão potências de 2 até d, mais o próprio d."""
    if d <= DENSE_GRID_MAX_D:
        return tuple(range(1, d + 1))
    grid = []
    value = 1
    while value < d:
        grid.append(value)
        value *= 2
    grid.append(d)
    return tuple(grid)


class AdaptiveSolver(BaseSolver):
    """DSIHT adaptativo em s0 (grade + critério de informação)."""

    def __init__(
        self,
        config: SolverConfig | None = None,
        ic_kind: ICKind = "sgc",
        gamma: float = DEFAULT_EBIC_GAMMA,
        workers: int = 1,
    ):
        super().__init__("ADSIHT", config, log_emoji="🔁")
        self.ic_kind = ic_kind
        self.gamma = gamma
        self.workers = max(1, workers)

    def resolve_grid(self, s0_grid: Sequence[int] | None, d: int) -> tuple[int, ...]:
        """
        Valida a grade: descarta entradas fora de [1, d] (com aviso), ordena e remove duplicatas.

        Raises:
            InvalidArgumentError: Grade vazia após a validação
        """
        if s0_grid is None:
            return default_s0_grid(d)
        valid = sorted({int(s0) for s0 in s0_grid if 1 <= int(s0) <= d})
        dropped = [s0 for s0 in s0_grid if not 1 <= int(s0) <= d]
        if dropped:
            self.log_warning(f"⚠️  s0 fora de [1, {d}] descartados da grade: {dropped}")
        if not valid:
            raise InvalidArgumentError(f"Grade de s0 vazia após validação (d={d})")
        return tuple(valid)

    def fit(
        self, data: Dataset, groups: GroupStructure, s0_grid: Sequence[int] | None = None
    ) -> AdaptiveResult:
        """Executa ADSIHT; com workers > 1 distribui os candidatos em threads."""
        grid = self.resolve_grid(s0_grid, groups.d)
        if self.workers > 1 and len(grid) > 1:
            fits = asyncio.run(self._fit_all_async(data, groups, grid))
        else:
            fits = [self._fit_candidate(data, groups, s0) for s0 in grid]
        return self._select(data, groups, fits)

    async def fit_async(
        self, data: Dataset, groups: GroupStructure, s0_grid: Sequence[int] | None = None
    ) -> AdaptiveResult:
        grid = self.resolve_grid(s0_grid, groups.d)
        fits = await self._fit_all_async(data, groups, grid)
        return self._select(data, groups, fits)

    async def _fit_all_async(
        self, data: Dataset, groups: GroupStructure, grid: tuple[int, ...]
    ) -> list[FitResult]:
        semaphore = asyncio.Semaphore(self.workers)

        async def fit_with_semaphore(s0: int) -> FitResult:
            async with semaphore:
                return await asyncio.to_thread(self._fit_candidate, data, groups, s0)

        self.log_info(f"Grade com {len(grid)} candidatos (até {self.workers} em paralelo)")
        # gather preserva a ordem da grade
        return list(await asyncio.gather(*(fit_with_semaphore(s0) for s0 in grid)))

    def _fit_candidate(self, data: Dataset, groups: GroupStructure, s0: int) -> FitResult:
        return DSIHTSolver(self.with_overrides(s0=s0)).fit(data, groups)

    def _select(
        self, data: Dataset, groups: GroupStructure, fits: list[FitResult]
    ) -> AdaptiveResult:
        summaries = []
        best_index = 0
        for index, fit in enumerate(fits):
            ic_value = information_criterion(self.ic_kind, fit, data, groups, self.gamma)
            trace = fit.trace
            summaries.append(
                CandidateSummary(
                    s0=fit.s0_used,
                    ic_value=ic_value,
                    criterion_value=fit.criterion_value,
                    element_support_size=fit.coefficients.element_count,
                    group_support_size=fit.coefficients.group_count,
                    t_bar=trace.t_bar,
                    horizon=trace.horizon,
                    t_tilde=trace.t_tilde,
                    sigma_bar=fit.sigma_bar,
                    truncated=fit.truncated,
                    interpolating=fit.rss == 0.0 and not fit.degenerate_response,
                )
            )
            # estrito: empates ficam com o menor s0
            if ic_value < summaries[best_index].ic_value:
                best_index = index

        best = fits[best_index]
        self.log_info(
            f"✓ s0 selecionado = {best.s0_used} ({self.ic_kind} = {summaries[best_index].ic_value:.6g}), "
            f"|S|={best.coefficients.element_count}, |G|={best.coefficients.group_count}"
        )
        return AdaptiveResult(best=best, per_candidate=tuple(summaries), ic_kind=self.ic_kind)


def adsiht_fit(
    data: Dataset,
    groups: GroupStructure,
    s0_grid: Sequence[int] | None = None,
    config: SolverConfig | None = None,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    workers: int = 1,
) -> AdaptiveResult:
    """Atalho funcional para AdaptiveSolver(...).fit(data, groups, s0_grid)."""
    return AdaptiveSolver(config, ic_kind=ic_kind, gamma=gamma, workers=workers).fit(
        data, groups, s0_grid
    )


async def adsiht_fit_async(
    data: Dataset,
    groups: GroupStructure,
    s0_grid: Sequence[int] | None = None,
    config: SolverConfig | None = None,
    ic_kind: ICKind = "sgc",
    gamma: float = DEFAULT_EBIC_GAMMA,
    workers: int = DEFAULT_WORKERS,
) -> AdaptiveResult:
    """Versão assíncrona (candidatos em threads, ordem da grade preservada)."""
    solver = AdaptiveSolver(config, ic_kind=ic_kind, gamma=gamma, workers=workers)
    return await solver.fit_async(data, groups, s0_grid)
