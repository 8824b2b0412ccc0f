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
"""Monte Carlo samplers of φ and outage estimators.

φ is sampled under the bin-i.i.d. model of the analysis: every trial draws N·M independent bins. For the first hop a
bin holds the MRT power sum ρ = Σ_i |h_i|² of K shadowed-Rician gains and φ_sr = mean(1/ρ); for the second hop a bin
holds a Nakagami power |D|² and φ_rd = mean(|D|^{-2}).
"""
import dataclasses
import logging
import math
from typing import Tuple

import numpy as np
from scipy import stats as scipy_stats

from pyotfs.constants import STREAM_LINK1, STREAM_LINK2
from pyotfs.exceptions import PyOtfsDomainError, PyOtfsValidationError
from pyotfs.fading import NakagamiParams, SRParams, sample_nakagami_power, sample_sr_gain
from pyotfs.montecarlo.config import MCConfig
from pyotfs.montecarlo.streams import run_blocks
from pyotfs.otfs.grid import OTFSGrid
from pyotfs.outage import LinkBudget, threshold_phi

LOGGER = logging.getLogger(__name__)

DEFAULT_CONFIDENCE = 0.95


@dataclasses.dataclass(frozen=True)
class OPEstimate:
    """Monte Carlo outage estimate with a two-sided Wilson interval."""

    p_hat: float
    ci_low: float
    ci_high: float
    trials: int
    confidence: float = DEFAULT_CONFIDENCE

    def __post_init__(self):
        """Validate ordering of the interval."""
        if not 0.0 <= self.ci_low <= self.p_hat <= self.ci_high <= 1.0:
            raise PyOtfsValidationError(
                f"Expected 0 <= ci_low <= p_hat <= ci_high <= 1, got {self.ci_low}, {self.p_hat}, {self.ci_high}."
            )

    def contains(self, probability: float) -> bool:
        """Whether `probability` lies inside the confidence interval."""
        return self.ci_low <= probability <= self.ci_high


def wilson_interval(successes: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> Tuple[float, float]:
    """Two-sided Wilson score interval of a binomial proportion.

    Args:
        successes: Number of events
        trials: Number of trials
        confidence: Coverage of the interval, in (0, 1)

    Returns:
        (lower, upper) bounds
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise PyOtfsDomainError(f"Invalid binomial counts: successes={successes}, trials={trials}.")
    if not 0.0 < confidence < 1.0:
        raise PyOtfsDomainError(f"Confidence must be in (0, 1), got {confidence}.")
    z = float(scipy_stats.norm.ppf(0.5 + confidence / 2.0))
    p_hat = successes / trials
    denominator = 1.0 + z**2 / trials
    center = (p_hat + z**2 / (2.0 * trials)) / denominator
    half_width = z * math.sqrt(p_hat * (1.0 - p_hat) / trials + z**2 / (4.0 * trials**2)) / denominator
    low = min(max(0.0, center - half_width), p_hat)
    high = max(min(1.0, center + half_width), p_hat)
    return low, high


def _estimate(failures: np.ndarray, confidence: float) -> OPEstimate:
    trials = int(failures.size)
    successes = int(np.count_nonzero(failures))
    low, high = wilson_interval(successes, trials, confidence)
    return OPEstimate(p_hat=successes / trials, ci_low=low, ci_high=high, trials=trials, confidence=confidence)


def sim_phi_sr(p: SRParams, n_antennas: int, grid: OTFSGrid, cfg: MCConfig, stream_id: int = STREAM_LINK1):
    """Sample φ_sr = (1/NM) Σ_{k,l} 1/ρ^{k,l} with ρ^{k,l} the MRT power sum of K SR gains.

    Args:
        p: SR parameters of every antenna
        n_antennas: Number of transmit antennas K
        grid: Frame geometry
        cfg: Monte Carlo configuration
        stream_id: Random stream to draw from

    Returns:
        Array of `cfg.trials` samples
    """
    if n_antennas < 1:
        raise PyOtfsDomainError(f"Number of antennas must be positive, got {n_antennas}.")

    def _block(rng: np.random.Generator, size: int) -> np.ndarray:
        gains = sample_sr_gain(p, rng, size=(size, grid.n_bins, n_antennas))
        rho = np.sum(np.abs(gains) ** 2, axis=2)
        return np.mean(1.0 / rho, axis=1)

    LOGGER.debug(f"Sampling φ_sr: {p}, K={n_antennas}, NM={grid.n_bins}, trials={cfg.trials}")
    return run_blocks(cfg, stream_id, _block)


def sim_phi_rd(p: NakagamiParams, grid: OTFSGrid, cfg: MCConfig, stream_id: int = STREAM_LINK2):
    """Sample φ_rd = (1/NM) Σ_{k,l} |D^{k,l}|^{-2} with i.i.d. Nakagami bins.

    For m <= 1 the mean of φ_rd does not exist; samples are still produced and a warning is logged.

    Args:
        p: Nakagami parameters of the second hop
        grid: Frame geometry
        cfg: Monte Carlo configuration
        stream_id: Random stream to draw from

    Returns:
        Array of `cfg.trials` samples
    """
    if p.m <= 1:
        LOGGER.warning(f"Nakagami m={p.m} <= 1: φ_rd has no finite mean; sample averages will not settle.")

    def _block(rng: np.random.Generator, size: int) -> np.ndarray:
        powers = sample_nakagami_power(p, rng, size=(size, grid.n_bins))
        return np.mean(1.0 / powers, axis=1)

    LOGGER.debug(f"Sampling φ_rd: {p}, NM={grid.n_bins}, trials={cfg.trials}")
    return run_blocks(cfg, stream_id, _block)


def _as_samples(name: str, samples) -> np.ndarray:
    values = np.asarray(samples, dtype=float).reshape(-1)
    if values.size == 0:
        raise PyOtfsDomainError(f"`{name}` must not be empty.")
    return values


def mc_outage(phi_samples, budget: LinkBudget, confidence: float = DEFAULT_CONFIDENCE) -> OPEstimate:
    """Fraction of trials in outage, i.e. with Ps/(σ² φ d^α) <= γ_th (φ >= t).

    Args:
        phi_samples: Samples of φ
        budget: Power budget of the hop
        confidence: Coverage of the Wilson interval

    Returns:
        OPEstimate
    """
    values = _as_samples("phi_samples", phi_samples)
    return _estimate(values >= threshold_phi(budget), confidence)


def mc_outage_e2e(
    phi1, phi2, budget1: LinkBudget, budget2: LinkBudget, confidence: float = DEFAULT_CONFIDENCE
) -> OPEstimate:
    """Fraction of paired trials where either hop is in outage.

    Raises:
        PyOtfsDomainError: if the sample sequences differ in length
    """
    values1 = _as_samples("phi1", phi1)
    values2 = _as_samples("phi2", phi2)
    if values1.size != values2.size:
        raise PyOtfsDomainError(f"Paired samples differ in length: {values1.size} != {values2.size}.")
    failures = (values1 >= threshold_phi(budget1)) | (values2 >= threshold_phi(budget2))
    return _estimate(failures, confidence)
