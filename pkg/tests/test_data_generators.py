"""Testes dos geradores sintéticos (design AR(1), beta*, resposta com SNR)."""

import math

import numpy as np
import pytest

from models.sparse_models import SparseCoefficients
from simulation.data_generators import gen_coefficients, gen_design, gen_response, signal_variance
from utils.errors import InvalidArgumentError
from utils.group_helpers import build_groups


class TestDesign:
    def test_deterministic_in_seed(self):
        first = gen_design(50, 4, 3, 0.5, seed=9)
        assert first.shape == (50, 12)
        assert np.array_equal(first, gen_design(50, 4, 3, 0.5, seed=9))
        assert not np.array_equal(first, gen_design(50, 4, 3, 0.5, seed=10))

    def test_ar1_correlation(self):
        design = gen_design(20_000, 1, 3, 0.5, seed=1)
        correlation = np.corrcoef(design, rowvar=False)
        assert correlation[0, 1] == pytest.approx(0.5, abs=0.03)
        assert correlation[1, 2] == pytest.approx(0.5, abs=0.03)
        assert correlation[0, 2] == pytest.approx(0.25, abs=0.03)
        assert design.var(axis=0) == pytest.approx(np.ones(3), abs=0.05)

    def test_independent_columns_when_rho_zero(self):
        correlation = np.corrcoef(gen_design(20_000, 2, 1, 0.0, seed=2), rowvar=False)
        assert correlation[0, 1] == pytest.approx(0.0, abs=0.03)

    @pytest.mark.parametrize("rho", [-0.1, 1.0])
    def test_invalid_rho(self, rho):
        with pytest.raises(InvalidArgumentError):
            gen_design(10, 2, 2, rho, seed=0)


class TestCoefficients:
    def test_exact_double_sparsity(self):
        beta = gen_coefficients(m=10, d=6, s=3, s0=2, signal="homogeneous", seed=5)
        assert beta.group_count == 3
        assert beta.element_count == 6
        assert set(np.unique(beta.values[list(beta.support)])) <= {-1.0, 1.0}

    def test_saturated_shape_is_dense(self):
        beta = gen_coefficients(m=3, d=4, s=3, s0=4, signal="homogeneous", seed=0)
        assert np.all(np.abs(beta.values) == 1.0)

    def test_deterministic_in_seed(self):
        first = gen_coefficients(20, 5, 4, 3, "heterogeneous", seed=3)
        second = gen_coefficients(20, 5, 4, 3, "heterogeneous", seed=3)
        assert np.array_equal(first.values, second.values)

    def test_heterogeneous_moments(self):
        beta = gen_coefficients(m=1000, d=100, s=1000, s0=100, signal="heterogeneous", seed=8)
        values = beta.values
        assert abs(values.mean()) < 0.02
        assert values.var() == pytest.approx(1.0, abs=0.02)

    @pytest.mark.parametrize("s, s0", [(5, 1), (1, 4)])
    def test_infeasible_shape(self, s, s0):
        with pytest.raises(InvalidArgumentError):
            gen_coefficients(m=4, d=3, s=s, s0=s0, signal="homogeneous", seed=0)


class TestResponse:
    def test_sigma_single_coordinate(self):
        groups = build_groups([2, 2])
        beta = SparseCoefficients.from_values(np.array([1.0, 0.0, 0.0, 0.0]), groups)
        design = gen_design(30, 2, 2, 0.7, seed=1)
        _, sigma = gen_response(design, beta, 0.7, 4.0, seed=1)
        assert sigma == pytest.approx(0.5)

    def test_sigma_correlated_pair(self):
        groups = build_groups([2])
        beta = SparseCoefficients.from_values(np.array([1.0, 1.0]), groups)
        assert signal_variance(beta, 0.5) == pytest.approx(3.0)
        _, sigma = gen_response(gen_design(30, 1, 2, 0.5, seed=1), beta, 0.5, 3.0, seed=1)
        assert sigma == pytest.approx(1.0)

    def test_noise_is_deterministic_and_added_to_signal(self):
        beta = gen_coefficients(5, 4, 2, 2, "homogeneous", seed=11)
        design = gen_design(40, 5, 4, 0.5, seed=11)
        first, sigma = gen_response(design, beta, 0.5, 10.0, seed=11)
        second, _ = gen_response(design, beta, 0.5, 10.0, seed=11)
        assert np.array_equal(first, second)
        noise = first - design @ beta.values
        assert np.std(noise) == pytest.approx(sigma, rel=0.5)

    def test_high_snr_vanishing_noise(self):
        beta = gen_coefficients(5, 4, 2, 2, "homogeneous", seed=11)
        design = gen_design(40, 5, 4, 0.5, seed=11)
        response, sigma = gen_response(design, beta, 0.5, 1e12, seed=11)
        assert sigma < 1e-5
        assert response == pytest.approx(design @ beta.values, abs=1e-4)

    def test_zero_beta_is_rejected(self):
        groups = build_groups([2])
        with pytest.raises(InvalidArgumentError):
            gen_response(np.ones((3, 2)), SparseCoefficients.zeros(groups), 0.5, 1.0, seed=0)

    def test_dimension_mismatch(self):
        beta = SparseCoefficients.from_values(np.array([1.0, 0.0]), build_groups([2]))
        with pytest.raises(InvalidArgumentError):
            gen_response(np.ones((3, 3)), beta, 0.5, 1.0, seed=0)


def test_streams_are_independent():
    # mudar o design não muda o ruído: mesma seed, mesmo subfluxo de ruído
    beta = SparseCoefficients.from_values(np.array([1.0, 0.0]), build_groups([2]))
    a, sigma = gen_response(np.zeros((5, 2)) + [[1.0, 0.0]], beta, 0.0, 1.0, seed=3)
    b, _ = gen_response(np.zeros((5, 2)) + [[2.0, 0.0]], beta, 0.0, 1.0, seed=3)
    assert (b - a) == pytest.approx(np.ones(5))
    assert math.isclose(sigma, 1.0)
