# Copyright (c) 2024, The PyOTFS Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Fading laws of the two hops.

The first hop (satellite to HAPS) is shadowed-Rician (SR) per transmit antenna, combined over K antennas with maximum
ratio transmission; the second hop (HAPS to base station) is Nakagami-m per frequency bin.

    Examples of use:

        coeffs = sr_coeffs(FREQUENT_HEAVY_SHADOWING)
        density = mrt_sum_pdf(FREQUENT_HEAVY_SHADOWING, 4, 0.5)
        mean_inverse_power = sr_inverse_moment(FREQUENT_HEAVY_SHADOWING, 4, 1)

        rng = np.random.default_rng(0)
        gains = sample_sr_gain(FREQUENT_HEAVY_SHADOWING, rng, size=(1000, 4))
"""
import dataclasses
import functools
import itertools
import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from pyotfs.constants import MAX_ENUMERATED_TERMS
from pyotfs.exceptions import (
    PyOtfsDivergentMomentError,
    PyOtfsDomainError,
    PyOtfsUndefinedMomentError,
    PyOtfsUnsupportedConfigurationError,
    PyOtfsValidationError,
)
from pyotfs.specialfns import pochhammer

LOGGER = logging.getLogger(__name__)

SizeLike = Optional[Union[int, Tuple[int, ...]]]


@dataclasses.dataclass(frozen=True)
class SRParams:
    """Shadowed-Rician parameters of one transmit antenna.

    Args:
        m: Fading severity of the Nakagami-distributed LOS amplitude (integer, >= 1).
        b0: Half of the average power of the scatter component.
        omega: Average power of the LOS component.
    """

    m: int
    b0: float
    omega: float

    def __post_init__(self):
        """Validate parameters."""
        if isinstance(self.m, bool) or not math.isfinite(self.m) or int(self.m) != self.m or self.m < 1:
            raise PyOtfsValidationError(f"SR severity `m` must be an integer >= 1, got {self.m}.")
        object.__setattr__(self, "m", int(self.m))
        if not self.b0 > 0:
            raise PyOtfsValidationError(f"SR scatter parameter `b0` must be positive, got {self.b0}.")
        if not self.omega >= 0:
            raise PyOtfsValidationError(f"SR LOS power `omega` must be non-negative, got {self.omega}.")


FREQUENT_HEAVY_SHADOWING = SRParams(m=1, b0=0.063, omega=7e-4)
KARASAWA = SRParams(m=2, b0=0.0158, omega=0.123)


@dataclasses.dataclass(frozen=True)
class SRCoeffs:
    """Coefficients of the SR power density α e^{-βx} ₁F₁(m; 1; cx)."""

    alpha: float
    beta: float
    c: float

    @property
    def decay(self) -> float:
        """Exponential decay rate β - c of the finite-series form."""
        return self.beta - self.c


@dataclasses.dataclass(frozen=True)
class NakagamiParams:
    """Nakagami-m parameters of the second hop.

    Args:
        m: Shape, m >= 0.5.
        omega: Mean power spread Ω > 0.
    """

    m: float
    omega: float = 1.0

    def __post_init__(self):
        """Validate parameters."""
        if not self.m >= 0.5:
            raise PyOtfsValidationError(f"Nakagami shape `m` must be >= 0.5, got {self.m}.")
        if not self.omega > 0:
            raise PyOtfsValidationError(f"Nakagami spread `omega` must be positive, got {self.omega}.")


@dataclasses.dataclass(frozen=True)
class IGParams:
    """Inverse-gamma law with shape `alpha_ig` and scale `beta_ig`."""

    alpha_ig: float
    beta_ig: float

    def __post_init__(self):
        """Validate parameters."""
        if not self.alpha_ig > 0:
            raise PyOtfsValidationError(f"Inverse-gamma shape must be positive, got {self.alpha_ig}.")
        if not self.beta_ig > 0:
            raise PyOtfsValidationError(f"Inverse-gamma scale must be positive, got {self.beta_ig}.")

    @property
    def mean_defined(self) -> bool:
        """True when the mean exists (alpha_ig > 1)."""
        return self.alpha_ig > 1

    @property
    def variance_defined(self) -> bool:
        """True when the variance exists (alpha_ig > 2)."""
        return self.alpha_ig > 2

    @property
    def mean(self) -> float:
        """Mean beta_ig / (alpha_ig - 1).

        Raises:
            PyOtfsUndefinedMomentError: if alpha_ig <= 1
        """
        if not self.mean_defined:
            raise PyOtfsUndefinedMomentError(f"Inverse-gamma mean is undefined for alpha_ig={self.alpha_ig} <= 1.")
        return self.beta_ig / (self.alpha_ig - 1)

    @property
    def variance(self) -> float:
        """Variance beta_ig² / ((alpha_ig - 1)² (alpha_ig - 2)).

        Raises:
            PyOtfsUndefinedMomentError: if alpha_ig <= 2
        """
        if not self.variance_defined:
            raise PyOtfsUndefinedMomentError(
                f"Inverse-gamma variance is undefined for alpha_ig={self.alpha_ig} <= 2."
            )
        return self.beta_ig**2 / ((self.alpha_ig - 1) ** 2 * (self.alpha_ig - 2))


def sr_coeffs(p: SRParams) -> SRCoeffs:
    """Compute α, β and c of the SR power density.

    Args:
        p: SR parameters

    Returns:
        SRCoeffs with beta > c
    """
    two_b0 = 2.0 * p.b0
    alpha = (two_b0 * p.m / (two_b0 * p.m + p.omega)) ** p.m / two_b0
    beta = 1.0 / two_b0
    c = p.omega / (two_b0 * (two_b0 * p.m + p.omega))
    return SRCoeffs(alpha=alpha, beta=beta, c=c)


def sr_power_mean(p: SRParams) -> float:
    """Average SR power E|h|² = Ω + 2b0."""
    return p.omega + 2.0 * p.b0


def _xi(p: SRParams, coeffs: SRCoeffs) -> np.ndarray:
    """Weights ξ(k) = (-1)^k (1-m)_k c^k / (k!)² for k = 0..m-1 (all non-negative)."""
    return np.array(
        [(-1) ** k * pochhammer(1 - p.m, k) * coeffs.c**k / math.factorial(k) ** 2 for k in range(p.m)]
    )


def _as_nonnegative_array(name: str, x) -> np.ndarray:
    values = np.asarray(x, dtype=float)
    if np.any(np.isnan(values)) or np.any(values < 0):
        raise PyOtfsDomainError(f"`{name}` must be non-negative, got {x}.")
    return values


def _scalar_or_array(values: np.ndarray, like):
    return float(values) if np.ndim(like) == 0 else values


def sr_power_pdf(p: SRParams, x):
    """Density of the SR instantaneous power |h|².

    Evaluates the finite-series form Σ_{k<m} ξ(k) α x^k e^{-(β-c)x}.

    Args:
        p: SR parameters
        x: Non-negative power (scalar or array)

    Returns:
        Density value(s), same shape as x

    Raises:
        PyOtfsDomainError: if any x < 0
    """
    values = _as_nonnegative_array("x", x)
    coeffs = sr_coeffs(p)
    xi = _xi(p, coeffs)
    powers = np.stack([values**k for k in range(p.m)])
    density = coeffs.alpha * np.exp(-coeffs.decay * values) * np.tensordot(xi, powers, axes=1)
    return _scalar_or_array(density, x)


def sr_power_cdf(p: SRParams, x):
    """Distribution function of the SR power, integrated term by term from the finite-series density.

    Args:
        p: SR parameters
        x: Non-negative power (scalar or array)

    Returns:
        Pr(|h|² <= x), same shape as x
    """
    values = _as_nonnegative_array("x", x)
    coeffs = sr_coeffs(p)
    xi = _xi(p, coeffs)
    lam = coeffs.decay
    cdf = np.zeros_like(values)
    for k in range(p.m):
        cdf = cdf + xi[k] * coeffs.alpha * math.factorial(k) / lam ** (k + 1) * special.gammainc(k + 1, lam * values)
    return _scalar_or_array(np.clip(cdf, 0.0, 1.0), x)


AntennaParams = Union[SRParams, Sequence[SRParams]]


def _common_params(p: AntennaParams, n_antennas: int) -> SRParams:
    """Reduce per-antenna parameters to the common record the i.i.d. derivation needs."""
    if isinstance(n_antennas, bool) or not math.isfinite(n_antennas) or int(n_antennas) != n_antennas or n_antennas < 1:
        raise PyOtfsDomainError(f"Number of antennas must be a positive integer, got {n_antennas}.")
    if isinstance(p, SRParams):
        return p
    params = list(p)
    if len(params) != n_antennas:
        raise PyOtfsDomainError(f"Expected parameters for {n_antennas} antennas, got {len(params)}.")
    first = params[0]
    if any(other != first for other in params[1:]):
        raise PyOtfsUnsupportedConfigurationError(
            "MRT sum law is derived for i.i.d. antennas; per-antenna SR parameters must be identical."
        )
    return first


@functools.lru_cache(maxsize=64)
def _mrt_series(p: SRParams, n_antennas: int) -> Tuple[np.ndarray, np.ndarray]:
    """Enumerate the K-fold sum and aggregate the log coefficients by Λ₁.

    Returns:
        Tuple (lambda_1 values, log of the summed Ξ(K) for each value); terms with Ξ = 0 are dropped.
    """
    n_terms = p.m**n_antennas
    if n_terms > MAX_ENUMERATED_TERMS:
        raise PyOtfsUnsupportedConfigurationError(
            f"Direct enumeration of m^K = {p.m}^{n_antennas} terms exceeds the limit of {MAX_ENUMERATED_TERMS}."
        )
    coeffs = sr_coeffs(p)
    xi = _xi(p, coeffs)
    with np.errstate(divide="ignore"):
        log_xi = np.log(xi)

    ks = np.array(list(itertools.product(range(p.m), repeat=n_antennas)), dtype=np.int64).reshape(-1, n_antennas)
    partial_sums = np.cumsum(ks, axis=1)
    log_weights = log_xi[ks].sum(axis=1) + n_antennas * math.log(coeffs.alpha)
    for j in range(1, n_antennas):
        log_weights = log_weights + special.betaln(partial_sums[:, j - 1] + j, ks[:, j] + 1)
    lambda_1 = partial_sums[:, -1] + n_antennas

    finite = np.isfinite(log_weights)
    lambda_1, log_weights = lambda_1[finite], log_weights[finite]
    unique_lambda = np.unique(lambda_1)
    log_coeffs = np.array([special.logsumexp(log_weights[lambda_1 == value]) for value in unique_lambda])
    LOGGER.debug(f"Enumerated {n_terms} terms of the MRT sum for {p} and K={n_antennas}.")
    unique_lambda.setflags(write=False)
    log_coeffs.setflags(write=False)
    return unique_lambda, log_coeffs


def mrt_sum_pdf(p: AntennaParams, n_antennas: int, z):
    """Density of the MRT power sum ρ = Σ_{i=1}^K |h_i|² for i.i.d. SR antennas.

    Args:
        p: SR parameters shared by all antennas (or a per-antenna sequence of identical records)
        n_antennas: Number of transmit antennas K
        z: Non-negative power (scalar or array)

    Returns:
        Density value(s), same shape as z

    Raises:
        PyOtfsUnsupportedConfigurationError: for non-identical per-antenna parameters
    """
    params = _common_params(p, n_antennas)
    values = _as_nonnegative_array("z", z)
    lam = sr_coeffs(params).decay
    lambda_1, log_coeffs = _mrt_series(params, int(n_antennas))

    flat = values.reshape(-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_z = np.log(flat)
        exponents = (lambda_1[:, None] - 1) * log_z[None, :]
    # z = 0 contributes only through Λ₁ = 1 (0^0 = 1)
    exponents = np.where((lambda_1[:, None] == 1), 0.0, exponents)
    log_terms = log_coeffs[:, None] + exponents - lam * flat[None, :]
    density = np.exp(special.logsumexp(log_terms, axis=0)).reshape(values.shape)
    return _scalar_or_array(density, z)


def mrt_sum_cdf(p: AntennaParams, n_antennas: int, z):
    """Distribution function of the MRT power sum, integrated term by term.

    Args:
        p: SR parameters shared by all antennas
        n_antennas: Number of transmit antennas K
        z: Non-negative power (scalar or array)

    Returns:
        Pr(ρ <= z), same shape as z
    """
    params = _common_params(p, n_antennas)
    values = _as_nonnegative_array("z", z)
    lam = sr_coeffs(params).decay
    lambda_1, log_coeffs = _mrt_series(params, int(n_antennas))
    weights = np.exp(log_coeffs + special.gammaln(lambda_1) - lambda_1 * math.log(lam))
    flat = values.reshape(-1)
    cdf = (weights[:, None] * special.gammainc(lambda_1[:, None], lam * flat[None, :])).sum(axis=0)
    return _scalar_or_array(np.clip(cdf.reshape(values.shape), 0.0, 1.0), z)


def sr_inverse_moment(p: AntennaParams, n_antennas: int, n: int) -> float:
    """Inverse moment E[ρ^{-n}] of the MRT power sum.

    E[ρ^{-n}] = Σ...Σ Ξ(K) Γ(Λ₁ - n) / (β - c)^{Λ₁ - n}; every term needs Λ₁ - n > 0 and the smallest Λ₁ is K.

    Args:
        p: SR parameters shared by all antennas
        n_antennas: Number of transmit antennas K
        n: Positive integer order

    Returns:
        E[ρ^{-n}] > 0

    Raises:
        PyOtfsDivergentMomentError: if K <= n
    """
    params = _common_params(p, n_antennas)
    if isinstance(n, bool) or not math.isfinite(n) or int(n) != n or n < 1:
        raise PyOtfsDomainError(f"Inverse moment order must be a positive integer, got {n}.")
    if n_antennas <= n:
        raise PyOtfsDivergentMomentError(
            f"E[1/rho^{n}] diverges for K={n_antennas} antennas; it requires K > {n}."
        )
    lam = sr_coeffs(params).decay
    lambda_1, log_coeffs = _mrt_series(params, int(n_antennas))
    shifted = lambda_1 - n
    log_terms = log_coeffs + special.gammaln(shifted) - shifted * math.log(lam)
    return float(np.exp(special.logsumexp(log_terms)))


def ig_from_nakagami(p: NakagamiParams) -> IGParams:
    """Inverse-gamma law of |D|^{-2} when |D|² ~ Gamma(shape m, mean Ω).

    Args:
        p: Nakagami parameters

    Returns:
        IGParams(alpha_ig=m, beta_ig=m/Ω)
    """
    ig = IGParams(alpha_ig=float(p.m), beta_ig=p.m / p.omega)
    if not ig.mean_defined:
        LOGGER.warning(f"Inverse-gamma mean is undefined for Nakagami m={p.m} <= 1.")
    return ig


def sample_sr_gain(p: SRParams, substream: np.random.Generator, size: SizeLike = None):
    """Draw complex SR gains h = A e^{jθ} + w.

    A is Nakagami(m, Ω), θ is uniform on [0, 2π) and w is zero-mean circular complex Gaussian with power 2b0.

    Args:
        p: SR parameters
        substream: Deterministic random generator
        size: Output shape; None draws a single complex value

    Returns:
        Complex gain(s)
    """
    if p.omega > 0:
        amplitude = np.sqrt(substream.gamma(p.m, p.omega / p.m, size=size))
    else:
        amplitude = np.zeros(size) if size is not None else 0.0
    phase = substream.uniform(0.0, 2.0 * np.pi, size=size)
    scale = math.sqrt(p.b0)
    scatter = scale * substream.standard_normal(size=size) + 1j * scale * substream.standard_normal(size=size)
    gain = amplitude * np.exp(1j * phase) + scatter
    return complex(gain) if size is None else gain


def sample_sr_power(p: SRParams, substream: np.random.Generator, size: SizeLike = None):
    """Draw SR powers |h|² through `sample_sr_gain`."""
    power = np.abs(sample_sr_gain(p, substream, size=size)) ** 2
    return float(power) if size is None else power


def sample_nakagami_power(p: NakagamiParams, substream: np.random.Generator, size: SizeLike = None):
    """Draw Nakagami powers |D|² ~ Gamma(shape m, mean Ω).

    Args:
        p: Nakagami parameters
        substream: Deterministic random generator
        size: Output shape; None draws a single value

    Returns:
        Non-negative power(s)
    """
    power = substream.gamma(p.m, p.omega / p.m, size=size)
    return float(power) if size is None else power
