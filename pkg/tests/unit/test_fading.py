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
import logging
import math

import numpy as np
import pytest
from scipy import integrate, stats

from pyotfs.exceptions import (
    PyOtfsDivergentMomentError,
    PyOtfsDomainError,
    PyOtfsUndefinedMomentError,
    PyOtfsUnsupportedConfigurationError,
    PyOtfsValidationError,
)
from pyotfs.fading import (
    FREQUENT_HEAVY_SHADOWING,
    KARASAWA,
    IGParams,
    NakagamiParams,
    SRParams,
    ig_from_nakagami,
    mrt_sum_cdf,
    mrt_sum_pdf,
    sample_nakagami_power,
    sample_sr_gain,
    sample_sr_power,
    sr_coeffs,
    sr_inverse_moment,
    sr_power_cdf,
    sr_power_mean,
    sr_power_pdf,
)
from pyotfs.montecarlo.streams import substream
from pyotfs.specialfns import hyp1f1_int

PRESETS = [FREQUENT_HEAVY_SHADOWING, KARASAWA]


def _quad(fn, low=0.0, high=np.inf):
    value, _ = integrate.quad(fn, low, high, limit=200, epsabs=1e-12, epsrel=1e-10)
    return value


def test_sr_params_validation():
    with pytest.raises(PyOtfsValidationError):
        SRParams(m=0, b0=0.1, omega=0.1)
    with pytest.raises(PyOtfsValidationError):
        SRParams(m=1.5, b0=0.1, omega=0.1)
    with pytest.raises(PyOtfsValidationError):
        SRParams(m=math.nan, b0=0.1, omega=0.1)
    with pytest.raises(PyOtfsValidationError):
        SRParams(m=1, b0=0.0, omega=0.1)
    with pytest.raises(PyOtfsValidationError):
        SRParams(m=1, b0=0.1, omega=-0.1)
    assert SRParams(m=2.0, b0=0.1, omega=0.0).m == 2


def test_nakagami_and_ig_params_validation():
    with pytest.raises(PyOtfsValidationError):
        NakagamiParams(m=0.4)
    with pytest.raises(PyOtfsValidationError):
        NakagamiParams(m=2.0, omega=0.0)
    with pytest.raises(PyOtfsValidationError):
        IGParams(alpha_ig=0.0, beta_ig=1.0)
    with pytest.raises(PyOtfsValidationError):
        IGParams(alpha_ig=3.0, beta_ig=-1.0)


def test_sr_coeffs_frequent_heavy_shadowing():
    coeffs = sr_coeffs(FREQUENT_HEAVY_SHADOWING)
    assert coeffs.alpha == pytest.approx(7.8927, rel=1e-4)
    assert coeffs.beta == pytest.approx(7.9365, rel=1e-4)
    assert coeffs.c == pytest.approx(0.043848, rel=1e-4)
    # for m = 1 the density is a plain exponential with rate beta - c = alpha
    assert coeffs.decay == pytest.approx(coeffs.alpha, rel=1e-12)


def test_sr_coeffs_karasawa():
    coeffs = sr_coeffs(KARASAWA)
    assert coeffs.alpha == pytest.approx(3.6456, rel=1e-3)
    assert coeffs.beta == pytest.approx(31.6456, rel=1e-4)
    assert coeffs.c == pytest.approx(20.904, rel=1e-4)
    assert coeffs.beta > coeffs.c


def test_sr_coeffs_without_los_is_exponential():
    p = SRParams(m=3, b0=0.25, omega=0.0)
    coeffs = sr_coeffs(p)
    assert coeffs.c == 0.0
    assert coeffs.alpha == pytest.approx(coeffs.beta, rel=1e-14)
    x = np.linspace(0.0, 5.0, 11)
    np.testing.assert_allclose(sr_power_pdf(p, x), 2.0 * np.exp(-2.0 * x), rtol=1e-12)


@pytest.mark.parametrize("p", PRESETS)
def test_sr_power_pdf_matches_hypergeometric_form(p):
    coeffs = sr_coeffs(p)
    rng = np.random.default_rng(3)
    for x in rng.uniform(0.0, 1.0, size=100):
        expected = coeffs.alpha * math.exp(-coeffs.beta * x) * hyp1f1_int(p.m, coeffs.c * x)
        assert sr_power_pdf(p, float(x)) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("p", PRESETS)
def test_sr_power_pdf_normalization_and_mean(p):
    assert _quad(lambda x: sr_power_pdf(p, x)) == pytest.approx(1.0, abs=1e-6)
    assert _quad(lambda x: x * sr_power_pdf(p, x)) == pytest.approx(sr_power_mean(p), rel=1e-6)


@pytest.mark.parametrize("p", PRESETS)
def test_sr_power_cdf_integrates_pdf(p):
    for x in (0.01, 0.1, 0.3, 1.0):
        assert sr_power_cdf(p, x) == pytest.approx(_quad(lambda t: sr_power_pdf(p, t), 0.0, x), abs=1e-9)
    assert sr_power_cdf(p, 0.0) == 0.0
    assert sr_power_cdf(p, 100.0) == pytest.approx(1.0, abs=1e-12)


def test_sr_power_pdf_shapes_and_domain():
    p = FREQUENT_HEAVY_SHADOWING
    assert isinstance(sr_power_pdf(p, 0.5), float)
    assert sr_power_pdf(p, np.ones((2, 3))).shape == (2, 3)
    with pytest.raises(PyOtfsDomainError):
        sr_power_pdf(p, -0.1)
    with pytest.raises(PyOtfsDomainError):
        sr_power_cdf(p, np.array([0.1, -1.0]))


def test_mrt_sum_single_antenna_is_sr_power():
    x = np.linspace(0.0, 1.0, 21)
    for p in PRESETS:
        np.testing.assert_allclose(mrt_sum_pdf(p, 1, x), sr_power_pdf(p, x), rtol=1e-10, atol=1e-14)


def test_mrt_sum_two_exponential_antennas_is_erlang():
    p = FREQUENT_HEAVY_SHADOWING
    lam = sr_coeffs(p).decay
    z = np.linspace(0.0, 2.0, 21)
    np.testing.assert_allclose(mrt_sum_pdf(p, 2, z), lam**2 * z * np.exp(-lam * z), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("p", PRESETS)
@pytest.mark.parametrize("n_antennas", [1, 2, 4, 8])
def test_mrt_sum_pdf_normalization(p, n_antennas):
    assert _quad(lambda z: mrt_sum_pdf(p, n_antennas, z)) == pytest.approx(1.0, abs=1e-6)
    mean = n_antennas * sr_power_mean(p)
    assert mrt_sum_cdf(p, n_antennas, mean) == pytest.approx(
        _quad(lambda z: mrt_sum_pdf(p, n_antennas, z), 0.0, mean), abs=1e-8
    )


def test_mrt_sum_rejects_heterogeneous_antennas():
    other = SRParams(m=1, b0=0.05, omega=0.01)
    with pytest.raises(PyOtfsUnsupportedConfigurationError):
        mrt_sum_pdf([FREQUENT_HEAVY_SHADOWING, other], 2, 1.0)
    with pytest.raises(PyOtfsUnsupportedConfigurationError):
        sr_inverse_moment([FREQUENT_HEAVY_SHADOWING, other, other], 3, 1)
    identical = [KARASAWA] * 4
    assert mrt_sum_pdf(identical, 4, 0.5) == pytest.approx(mrt_sum_pdf(KARASAWA, 4, 0.5), rel=1e-14)


def test_mrt_sum_rejects_too_many_enumerated_terms():
    with pytest.raises(PyOtfsUnsupportedConfigurationError):
        mrt_sum_pdf(SRParams(m=5, b0=0.1, omega=0.1), 16, 1.0)


def test_inverse_moments_of_exponential_antennas():
    p = FREQUENT_HEAVY_SHADOWING
    lam = sr_coeffs(p).decay
    assert sr_inverse_moment(p, 3, 1) == pytest.approx(lam / 2.0, rel=1e-12)
    assert sr_inverse_moment(p, 4, 1) == pytest.approx(lam / 3.0, rel=1e-12)
    assert sr_inverse_moment(p, 4, 2) == pytest.approx(lam**2 / 6.0, rel=1e-12)
    assert sr_inverse_moment(p, 16, 2) == pytest.approx(lam**2 / (15.0 * 14.0), rel=1e-12)


@pytest.mark.parametrize("n_antennas", [33, 64, 70])
def test_inverse_moment_for_large_antenna_arrays(n_antennas):
    p = FREQUENT_HEAVY_SHADOWING
    lam = sr_coeffs(p).decay
    assert sr_inverse_moment(p, n_antennas, 1) == pytest.approx(lam / (n_antennas - 1), rel=1e-10)
    z = n_antennas / lam
    assert mrt_sum_pdf(p, n_antennas, z) == pytest.approx(stats.gamma.pdf(z, n_antennas, scale=1.0 / lam), rel=1e-10)


@pytest.mark.parametrize("n_antennas", [math.nan, math.inf, 2.5, 0, True])
def test_mrt_sum_rejects_invalid_antenna_counts(n_antennas):
    with pytest.raises(PyOtfsDomainError):
        mrt_sum_pdf(FREQUENT_HEAVY_SHADOWING, n_antennas, 1.0)


@pytest.mark.parametrize("p", PRESETS)
@pytest.mark.parametrize("n_antennas", [3, 4, 8])
@pytest.mark.parametrize("n", [1, 2])
def test_inverse_moments_match_quadrature(p, n_antennas, n):
    expected = _quad(lambda z: z**-n * mrt_sum_pdf(p, n_antennas, z))
    assert sr_inverse_moment(p, n_antennas, n) == pytest.approx(expected, rel=1e-6)


def test_inverse_moments_diverge_for_few_antennas():
    with pytest.raises(PyOtfsDivergentMomentError):
        sr_inverse_moment(FREQUENT_HEAVY_SHADOWING, 1, 1)
    with pytest.raises(PyOtfsDivergentMomentError):
        sr_inverse_moment(KARASAWA, 2, 2)
    with pytest.raises(PyOtfsDomainError):
        sr_inverse_moment(KARASAWA, 4, 0)


@pytest.mark.parametrize("p", PRESETS)
def test_inverse_moment_decreases_with_antennas(p):
    moments = [sr_inverse_moment(p, k, 1) for k in (3, 4, 8, 16)]
    assert all(later < earlier for earlier, later in zip(moments, moments[1:]))


def test_ig_from_nakagami():
    assert ig_from_nakagami(NakagamiParams(m=3.0)) == IGParams(alpha_ig=3.0, beta_ig=3.0)
    ig = ig_from_nakagami(NakagamiParams(m=8.0, omega=2.0))
    assert ig == IGParams(alpha_ig=8.0, beta_ig=4.0)
    assert ig.mean == pytest.approx(4.0 / 7.0)
    assert ig.variance == pytest.approx(16.0 / (49.0 * 6.0))


def test_ig_moments_undefined_for_small_shape(caplog):
    with caplog.at_level(logging.WARNING, logger="pyotfs.fading"):
        ig = ig_from_nakagami(NakagamiParams(m=1.0))
    assert "undefined" in caplog.text
    assert not ig.mean_defined
    with pytest.raises(PyOtfsUndefinedMomentError):
        _ = ig.mean

    ig = ig_from_nakagami(NakagamiParams(m=2.0))
    assert ig.mean == pytest.approx(2.0)
    assert not ig.variance_defined
    with pytest.raises(PyOtfsUndefinedMomentError):
        _ = ig.variance


def test_sample_sr_gain_shapes_and_reproducibility():
    p = KARASAWA
    assert isinstance(sample_sr_gain(p, substream(1, 1, 0)), complex)
    assert isinstance(sample_sr_power(p, substream(1, 1, 0)), float)
    first = sample_sr_gain(p, substream(1, 1, 0), size=(3, 5))
    second = sample_sr_gain(p, substream(1, 1, 0), size=(3, 5))
    assert first.shape == (3, 5)
    np.testing.assert_array_equal(first, second)


def test_sample_sr_power_without_los_has_scatter_mean():
    p = SRParams(m=1, b0=0.2, omega=0.0)
    samples = sample_sr_power(p, substream(11, 1, 0), size=200_000)
    standard_error = samples.std() / math.sqrt(samples.size)
    assert abs(samples.mean() - 0.4) < 4 * standard_error


@pytest.mark.parametrize("p", PRESETS)
def test_sample_sr_power_follows_closed_form_law(p):
    samples = sample_sr_power(p, substream(2024, 1, 0), size=100_000)
    standard_error = samples.std() / math.sqrt(samples.size)
    assert abs(samples.mean() - sr_power_mean(p)) < 4 * standard_error
    result = stats.kstest(samples, lambda x: sr_power_cdf(p, np.maximum(x, 0.0)))
    assert result.pvalue > 1e-3


def test_sample_nakagami_power_moments():
    p = NakagamiParams(m=3.0, omega=2.0)
    samples = sample_nakagami_power(p, substream(5, 2, 0), size=1_000_000)
    assert samples.mean() == pytest.approx(2.0, rel=0.01)
    assert samples.var() == pytest.approx(4.0 / 3.0, rel=0.02)
    assert isinstance(sample_nakagami_power(p, substream(5, 2, 0)), float)
