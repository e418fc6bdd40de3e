"""Testes dos oráculos exatos: enumeração de suportes, melhor subconjunto e DSRIP."""

import math

import numpy as np
import pytest

from models.sparse_models import ShapeSpec
from oracle.best_subset import best_subset_oracle
from oracle.dsrip import dsrip_constants, sparse_eigenvalue_max
from oracle.support_enumeration import count_supports, enumerate_supports, is_maximal
from utils.errors import EnumerationTooLargeError, InvalidArgumentError
from utils.group_helpers import build_groups
from utils.standardization import standardize

from tests.conftest import OrthogonalProblem, dataset_from, orthonormal_columns


class TestEnumeration:
    def test_single_group(self):
        supports = list(enumerate_supports(build_groups([2]), ShapeSpec(s=1, s0=1)))
        assert supports == [(), (0,), (1,)]

    def test_singleton_groups(self):
        supports = list(enumerate_supports(build_groups([1, 1]), ShapeSpec(s=1, s0=1)))
        assert supports == [(), (0,), (1,)]

    def test_unconstrained_gives_power_set(self):
        groups = build_groups([2, 3])
        supports = list(enumerate_supports(groups, ShapeSpec(s=2, s0=3)))
        assert len(supports) == 2**5
        assert len(set(supports)) == len(supports)
        assert supports == sorted(supports)

    @pytest.mark.parametrize(
        "sizes, s, s0",
        [([3, 3, 3], 2, 2), ([2, 5, 1], 2, 3), ([4, 4, 4, 4], 3, 1), ([1, 2, 3], 0, 1)],
    )
    def test_count_matches_enumeration(self, sizes, s, s0):
        groups = build_groups(sizes)
        shape = ShapeSpec(s=s, s0=s0)
        supports = list(enumerate_supports(groups, shape))
        assert len(supports) == count_supports(groups, shape)
        assert len(set(supports)) == len(supports)
        for support in supports:
            active = {int(groups.group_index[i]) for i in support}
            assert len(active) <= s and len(support) <= s * s0

    def test_guard(self):
        groups = build_groups([10] * 10)
        with pytest.raises(EnumerationTooLargeError) as excinfo:
            enumerate_supports(groups, ShapeSpec(s=5, s0=5), limit=1000)
        assert excinfo.value.count > 1000

    def test_shape_larger_than_structure(self):
        with pytest.raises(InvalidArgumentError):
            count_supports(build_groups([2, 2]), ShapeSpec(s=3, s0=1))

    def test_is_maximal(self):
        groups = build_groups([3, 3])
        shape = ShapeSpec(s=1, s0=2)
        assert is_maximal((0, 1), groups, shape)
        assert not is_maximal((0,), groups, shape)
        assert is_maximal((0,), build_groups([1, 1]), ShapeSpec(s=1, s0=1))


class TestBestSubset:
    def test_noiseless_orthogonal_recovers_truth(self):
        problem = OrthogonalProblem(60, [3, 3, 3, 3], {0: 2.0, 2: -1.0, 9: 3.0}, noise=0.0, seed=1)
        estimate = best_subset_oracle(problem.data, problem.groups, ShapeSpec(s=2, s0=2))
        assert estimate.support == (0, 2, 9)
        assert estimate.values * problem.data.column_scales == pytest.approx(problem.beta.values, abs=1e-8)

    def test_orthogonal_picks_largest_marginals_within_shape(self):
        n = 40
        design = math.sqrt(n) * orthonormal_columns(n, 6, seed=3)
        groups = build_groups([3, 3])
        # marginais M = (3, 2.5, 0.1, 0.2, 2.8, 1.0)
        response = design @ np.array([3.0, 2.5, 0.1, 0.2, 2.8, 1.0])
        estimate = best_subset_oracle(dataset_from(design, response), groups, ShapeSpec(s=1, s0=2))
        assert estimate.support == (0, 1)

    def test_tie_prefers_smaller_support_over_lexicographic(self):
        n = 40
        basis = math.sqrt(n) * orthonormal_columns(n, 2, seed=4)
        design = np.column_stack([basis, basis.sum(axis=1)])
        response = basis.sum(axis=1)
        # (0, 1) e (2,) têm RSS nulo; (0, 1) vem antes na ordem lexicográfica
        data = dataset_from(design, response)
        estimate = best_subset_oracle(data, build_groups([3]), ShapeSpec(s=1, s0=2))
        assert estimate.support == (2,)

    def test_empty_shape(self):
        problem = OrthogonalProblem(20, [2, 2], {0: 1.0}, noise=0.1, seed=2)
        estimate = best_subset_oracle(problem.data, problem.groups, ShapeSpec(s=0, s0=1))
        assert estimate.is_zero()

    def test_rss_not_worse_than_any_feasible_support(self):
        rng = np.random.default_rng(6)
        data = standardize(rng.standard_normal((30, 8)), rng.standard_normal(30))
        groups = build_groups([4, 4])
        shape = ShapeSpec(s=1, s0=2)
        estimate = best_subset_oracle(data, groups, shape)
        best_rss = float(np.sum((data.response - data.design @ estimate.values) ** 2))
        for support in enumerate_supports(groups, shape):
            if not support:
                continue
            coefficients = np.linalg.lstsq(data.design[:, list(support)], data.response, rcond=None)[0]
            rss = float(np.sum((data.response - data.design[:, list(support)] @ coefficients) ** 2))
            assert best_rss <= rss + 1e-9


class TestDsrip:
    def test_orthogonal_design(self):
        n = 30
        data = dataset_from(math.sqrt(n) * orthonormal_columns(n, 6, seed=0), np.zeros(n))
        constants = dsrip_constants(data, build_groups([3, 3]), ShapeSpec(s=2, s0=2))
        assert constants.lower == pytest.approx(n)
        assert constants.upper == pytest.approx(n)
        assert constants.ratio == pytest.approx(0.0, abs=1e-12)

    def test_duplicated_column(self):
        rng = np.random.default_rng(1)
        raw = rng.standard_normal((20, 4))
        raw[:, 1] = raw[:, 0]
        data = standardize(raw, np.zeros(20))
        constants = dsrip_constants(data, build_groups([2, 2]), ShapeSpec(s=1, s0=2))
        assert constants.lower == pytest.approx(0.0, abs=1e-8)
        assert constants.ratio == pytest.approx(1.0, abs=1e-9)

    def test_gaussian_bracket_and_rayleigh_quotients(self):
        rng = np.random.default_rng(2)
        n = 50
        data = standardize(rng.standard_normal((n, 8)), np.zeros(n))
        groups = build_groups([4, 4])
        shape = ShapeSpec(s=2, s0=2)
        constants = dsrip_constants(data, groups, shape)
        assert constants.lower < n < constants.upper
        assert 0.0 < constants.ratio < 1.0

        feasible = [s for s in enumerate_supports(groups, shape) if s]
        for _ in range(1000):
            support = list(feasible[rng.integers(len(feasible))])
            x = rng.standard_normal(len(support))
            block = data.design[:, support]
            quotient = float(x @ block.T @ block @ x / (x @ x))
            assert constants.lower - 1e-8 <= quotient <= constants.upper + 1e-8

    def test_empty_shape_rejected(self):
        data = dataset_from(np.eye(2), np.zeros(2))
        with pytest.raises(InvalidArgumentError):
            dsrip_constants(data, build_groups([2]), ShapeSpec(s=0, s0=1))

    def test_sparse_eigenvalue_max_orthogonal(self):
        n = 30
        data = dataset_from(math.sqrt(n) * orthonormal_columns(n, 6, seed=0), np.zeros(n))
        assert sparse_eigenvalue_max(data, build_groups([3, 3]), ShapeSpec(s=1, s0=1)) == pytest.approx(1.0)
