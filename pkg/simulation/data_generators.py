"""
Geradores sintéticos: design gaussiano AR(1), coeficientes (s, s0)-esparsos e resposta com SNR alvo.

Cada gerador é função pura de (parâmetros, seed). As três fontes de aleatoriedade
usam subfluxos distintos do mesmo seed: default_rng([seed, tag]).
"""

import logging
import math

import numpy as np
from scipy.signal import lfilter

from models.experiment_models import SignalKind
from models.sparse_models import SparseCoefficients
from utils.errors import InvalidArgumentError
from utils.group_helpers import build_groups

logger = logging.getLogger(__name__)

DESIGN_STREAM = 0
COEFFICIENT_STREAM = 1
NOISE_STREAM = 2


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """PCG64 determinístico para o par (seed, subfluxo)."""
    return np.random.default_rng([int(seed), stream])


def gen_design(n: int, m: int, d: int, rho: float, seed: int) -> np.ndarray:
    """
    Matriz n x (m d) com linhas i.i.d. N(0, Sigma), Sigma_ij = rho^|i-j|.

    Cada linha segue x_1 = z_1, x_j = rho x_{j-1} + sqrt(1 - rho^2) z_j.
    """
    if not 0.0 <= rho < 1.0:
        raise InvalidArgumentError(f"rho deve estar em [0, 1), recebido {rho}")
    if n < 1 or m < 1 or d < 1:
        raise InvalidArgumentError(f"Dimensões inválidas: n={n}, m={m}, d={d}")

    innovations = stream_rng(seed, DESIGN_STREAM).standard_normal((n, m * d))
    innovations[:, 1:] *= math.sqrt(1.0 - rho * rho)
    return lfilter([1.0], [1.0, -rho], innovations, axis=1)


def gen_coefficients(
    m: int, d: int, s: int, s0: int, signal: SignalKind, seed: int
) -> SparseCoefficients:
    """
    Sorteia s grupos sem reposição e s0 posições em cada um.

    Valores em {1, -1} (homogeneous) ou N(0, 1) (heterogeneous).
    """
    if not 0 <= s <= m:
        raise InvalidArgumentError(f"s={s} fora de [0, m={m}]")
    if not 1 <= s0 <= d:
        raise InvalidArgumentError(f"s0={s0} inviável para grupos de tamanho d={d}")

    rng = stream_rng(seed, COEFFICIENT_STREAM)
    groups = build_groups([d] * m)
    values = np.zeros(m * d)

    for group in np.sort(rng.choice(m, size=s, replace=False)):
        positions = group * d + np.sort(rng.choice(d, size=s0, replace=False))
        if signal == "homogeneous":
            values[positions] = rng.choice([-1.0, 1.0], size=s0)
        elif signal == "heterogeneous":
            values[positions] = rng.standard_normal(s0)
        else:
            raise InvalidArgumentError(f"Tipo de sinal desconhecido: {signal}")

    return SparseCoefficients.from_values(values, groups)


def signal_variance(beta: SparseCoefficients, rho: float) -> float:
    """beta' Sigma beta com a covariância AR(1) exata, restrita ao suporte."""
    support = np.asarray(beta.support, dtype=int)
    if support.size == 0:
        return 0.0
    lags = np.abs(support[:, None] - support[None, :])
    covariance = np.power(rho, lags, dtype=float)
    coefficients = beta.values[support]
    return float(coefficients @ covariance @ coefficients)


def gen_response(
    raw_design: np.ndarray, beta: SparseCoefficients, rho: float, snr: float, seed: int
) -> tuple[np.ndarray, float]:
    """
    y = X beta + xi, xi ~ N(0, sigma^2) com sigma = sqrt(beta' Sigma beta / snr).

    Returns:
        Tupla (resposta, sigma usado)

    Raises:
        InvalidArgumentError: beta = 0 (SNR indefinido), snr <= 0 ou dimensões incompatíveis
    """
    if snr <= 0:
        raise InvalidArgumentError(f"snr deve ser positivo, recebido {snr}")
    if raw_design.ndim != 2 or raw_design.shape[1] != beta.groups.p:
        raise InvalidArgumentError(
            f"Design {raw_design.shape} incompatível com p={beta.groups.p}"
        )

    quadratic = signal_variance(beta, rho)
    if quadratic == 0.0:
        raise InvalidArgumentError("beta* = 0: SNR indefinido")

    sigma = math.sqrt(quadratic / snr)
    support = np.asarray(beta.support, dtype=int)
    noise = stream_rng(seed, NOISE_STREAM).standard_normal(raw_design.shape[0])
    response = raw_design[:, support] @ beta.values[support] + sigma * noise
    logger.debug(f"Resposta gerada: sigma={sigma:.5g} (snr={snr})")
    return response, sigma
