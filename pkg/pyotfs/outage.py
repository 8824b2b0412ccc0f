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
"""Closed-form outage probability of the dual-hop link.

The first hop's noise-enhancement statistic φ_sr (average of 1/ρ over the NM bins, ρ the MRT power sum) is
approximated by a Gaussian; the second hop's φ_rd (average of |D|^{-2} over i.i.d. inverse-gamma bins) by a Gamma
law with matched mean and variance. A hop is in outage when φ ≥ t = Ps/(σ² d^α γ_th); the decode-and-forward link
is in outage when either hop is.

    Examples of use:

        grid = OTFSGrid(n_doppler=8, m_delay=8)
        stats = phi_sr_stats(FREQUENT_HEAVY_SHADOWING, 16, grid)
        approx = gamma_approx_from_nakagami(NakagamiParams(m=8.0), grid)
        budget = budget_at_snr_db(LinkBudget(), 0.0)
        point = outage_point(stats, approx, budget, budget)
"""
import dataclasses
import logging
import math

import numpy as np
from scipy import stats as scipy_stats

from pyotfs.exceptions import (
    PyOtfsDivergentMomentError,
    PyOtfsDomainError,
    PyOtfsUndefinedMomentError,
    PyOtfsValidationError,
)
from pyotfs.fading import AntennaParams, IGParams, NakagamiParams, ig_from_nakagami, sr_inverse_moment
from pyotfs.otfs.grid import LinkGain, OTFSGrid
from pyotfs.specialfns import q_function, reg_gamma_upper

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class LinkBudget:
    """Power budget of one hop.

    Args:
        tx_power: Transmit power Ps in watts.
        distance: Hop distance d in meters.
        pathloss_exp: Path-loss exponent α.
        noise_power: Noise power σ² in watts.
        snr_threshold: Linear SNR threshold γ_th.
    """

    tx_power: float = 1.0
    distance: float = 1.0
    pathloss_exp: float = 2.0
    noise_power: float = 1.0
    snr_threshold: float = 1.0

    def __post_init__(self):
        """Validate that all fields are positive and finite."""
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not (value > 0 and math.isfinite(value)):
                raise PyOtfsValidationError(f"`{field.name}` must be positive and finite, got {value}.")

    @property
    def link_gain(self) -> LinkGain:
        """Large-scale gain of the hop."""
        return LinkGain(distance=self.distance, pathloss_exp=self.pathloss_exp, tx_power=self.tx_power)


@dataclasses.dataclass(frozen=True)
class PhiStats:
    """Mean and variance of the Gaussian approximation of φ_sr."""

    mean: float
    variance: float

    def __post_init__(self):
        """Validate moments."""
        if not self.mean > 0:
            raise PyOtfsValidationError(f"φ mean must be positive, got {self.mean}.")
        if not self.variance > 0:
            raise PyOtfsValidationError(f"φ variance must be positive, got {self.variance}.")

    @property
    def std(self) -> float:
        """Standard deviation."""
        return math.sqrt(self.variance)

    def pdf(self, x):
        """Gaussian density N(mean, variance) at x."""
        return scipy_stats.norm.pdf(x, loc=self.mean, scale=self.std)


@dataclasses.dataclass(frozen=True)
class GammaApprox:
    """Gamma approximation of φ_rd with shape `alpha_g` and rate `beta_g`."""

    alpha_g: float
    beta_g: float
    source_ig: IGParams

    def __post_init__(self):
        """Validate parameters."""
        if not self.alpha_g > 0 or not self.beta_g > 0:
            raise PyOtfsValidationError(
                f"Gamma shape and rate must be positive, got alpha_g={self.alpha_g}, beta_g={self.beta_g}."
            )

    @property
    def mean(self) -> float:
        """Mean alpha_g / beta_g."""
        return self.alpha_g / self.beta_g

    @property
    def variance(self) -> float:
        """Variance alpha_g / beta_g²."""
        return self.alpha_g / self.beta_g**2

    def pdf(self, x):
        """Gamma density at x."""
        return scipy_stats.gamma.pdf(x, a=self.alpha_g, scale=1.0 / self.beta_g)


@dataclasses.dataclass(frozen=True)
class OutagePoint:
    """Per-hop and end-to-end outage probability at one operating point."""

    p_link1: float
    p_link2: float
    p_e2e: float

    def __post_init__(self):
        """Validate probabilities."""
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not 0.0 <= value <= 1.0:
                raise PyOtfsValidationError(f"`{field.name}` must be a probability, got {value}.")


def threshold_phi(budget: LinkBudget) -> float:
    """Largest φ that keeps the hop out of outage, t = Ps / (σ² d^α γ_th)."""
    return budget.tx_power / (budget.noise_power * budget.distance**budget.pathloss_exp * budget.snr_threshold)


def average_snr_db(budget: LinkBudget) -> float:
    """Average SNR 10 log10(Ps / (σ² d^α)) in dB."""
    return 10.0 * math.log10(budget.tx_power / (budget.noise_power * budget.distance**budget.pathloss_exp))


def budget_at_snr_db(budget: LinkBudget, snr_db: float) -> LinkBudget:
    """Return `budget` with the transmit power set so that its average SNR equals `snr_db`."""
    tx_power = 10.0 ** (snr_db / 10.0) * budget.noise_power * budget.distance**budget.pathloss_exp
    return dataclasses.replace(budget, tx_power=tx_power)


def phi_sr_stats(p: AntennaParams, n_antennas: int, grid: OTFSGrid) -> PhiStats:
    """Moments of φ_sr for the Gaussian (central limit) approximation.

    mean = E[1/ρ] and variance = (E[1/ρ²] - E[1/ρ]²) / NM.

    Args:
        p: SR parameters of the transmit antennas
        n_antennas: Number of transmit antennas K
        grid: Frame geometry

    Returns:
        PhiStats

    Raises:
        PyOtfsDivergentMomentError: if K <= 2, where E[1/ρ²] does not exist
    """
    if n_antennas <= 2:
        raise PyOtfsDivergentMomentError(
            f"Gaussian approximation of φ_sr needs K > 2 transmit antennas (E[1/rho^2] diverges), got K={n_antennas}."
        )
    first = sr_inverse_moment(p, n_antennas, 1)
    second = sr_inverse_moment(p, n_antennas, 2)
    variance = (second - first**2) / grid.n_bins
    LOGGER.debug(f"φ_sr moments for K={n_antennas}, NM={grid.n_bins}: mean={first}, variance={variance}")
    return PhiStats(mean=first, variance=variance)


def gamma_approx(ig: IGParams, grid: OTFSGrid) -> GammaApprox:
    """Match a Gamma law to the mean and variance of the NM-bin average of i.i.d. inverse-gamma variates.

    alpha_g = NM (alpha_ig - 2); beta_g = NM (alpha_ig - 1)(alpha_ig - 2) / beta_ig.

    Raises:
        PyOtfsUndefinedMomentError: if alpha_ig <= 2
    """
    if not ig.variance_defined:
        raise PyOtfsUndefinedMomentError(
            f"Gamma approximation of φ_rd needs a finite inverse-gamma variance (alpha_ig > 2), got {ig.alpha_ig}."
        )
    alpha_g = grid.n_bins * (ig.alpha_ig - 2)
    beta_g = grid.n_bins * (ig.alpha_ig - 1) * (ig.alpha_ig - 2) / ig.beta_ig
    LOGGER.debug(f"Gamma approximation of φ_rd for {ig}, NM={grid.n_bins}: alpha_g={alpha_g}, beta_g={beta_g}")
    return GammaApprox(alpha_g=alpha_g, beta_g=beta_g, source_ig=ig)


def gamma_approx_from_nakagami(p: NakagamiParams, grid: OTFSGrid) -> GammaApprox:
    """Gamma approximation of φ_rd for Nakagami-m bins."""
    return gamma_approx(ig_from_nakagami(p), grid)


def op_link_sr(stats: PhiStats, budget: LinkBudget) -> float:
    """Outage probability of the first hop, Q((t - E[φ_sr]) / √V[φ_sr])."""
    t = threshold_phi(budget)
    return q_function((t - stats.mean) / stats.std)


def op_link_nakagami(g: GammaApprox, budget: LinkBudget) -> float:
    """Outage probability of the second hop, Pr(φ_rd >= t) under the Gamma approximation."""
    t = threshold_phi(budget)
    return reg_gamma_upper(g.alpha_g, g.beta_g * t)


def op_end_to_end(p1: float, p2: float) -> float:
    """Decode-and-forward outage 1 - (1 - p1)(1 - p2) = p1 + p2 - p1 p2.

    Raises:
        PyOtfsDomainError: if either argument is not a probability
    """
    for name, value in (("p1", p1), ("p2", p2)):
        if not 0.0 <= value <= 1.0:
            raise PyOtfsDomainError(f"`{name}` must be in [0, 1], got {value}.")
    return float(np.clip(p1 + p2 - p1 * p2, max(p1, p2), 1.0))


def outage_point(stats: PhiStats, g: GammaApprox, budget1: LinkBudget, budget2: LinkBudget) -> OutagePoint:
    """Analytical outage of both hops and of the end-to-end link at one operating point."""
    p1 = op_link_sr(stats, budget1)
    p2 = op_link_nakagami(g, budget2)
    return OutagePoint(p_link1=p1, p_link2=p2, p_e2e=op_end_to_end(p1, p2))
