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
"""Scenario configuration: both hops, the OTFS grid, the Monte Carlo run and the SNR sweep."""
import dataclasses
import logging
import math
from typing import Optional, Tuple

import numpy as np

from pyotfs.exceptions import PyOtfsValidationError
from pyotfs.fading import NakagamiParams, SRParams
from pyotfs.montecarlo.config import MCConfig
from pyotfs.otfs.grid import OTFSGrid
from pyotfs.outage import LinkBudget, budget_at_snr_db
from pyotfs.utils.dataclasses import kwonly_dataclass

LOGGER = logging.getLogger(__name__)


def _db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


@kwonly_dataclass
@dataclasses.dataclass
class Link1Config:
    """First hop: shadowed-Rician fading over K transmit antennas with MRT.

    Args:
        m: SR fading severity.
        b0: Half of the average scatter power.
        omega: Average LOS power.
        antennas: Number of transmit antennas K.
        tx_power: Satellite transmit power Ps.
        distance: Satellite to HAPS distance.
        pathloss_exp: Path-loss exponent.
        noise_power: Noise power at the HAPS.
        snr_threshold_db: Outage threshold γ_th in dB.
    """

    m: int
    b0: float
    omega: float
    antennas: int
    tx_power: float = 1.0
    distance: float = 1.0
    pathloss_exp: float = 2.0
    noise_power: float = 1.0
    snr_threshold_db: float = 0.0

    def __post_init__(self):
        """Validate the section by building the records it describes."""
        if self.antennas < 1:
            raise PyOtfsValidationError(f"`antennas` must be at least 1, got {self.antennas}.")
        _ = self.sr_params, self.budget

    @property
    def sr_params(self) -> SRParams:
        """SR parameters of every antenna."""
        return SRParams(m=self.m, b0=self.b0, omega=self.omega)

    @property
    def budget(self) -> LinkBudget:
        """Power budget of the first hop."""
        return LinkBudget(
            tx_power=self.tx_power,
            distance=self.distance,
            pathloss_exp=self.pathloss_exp,
            noise_power=self.noise_power,
            snr_threshold=_db_to_linear(self.snr_threshold_db),
        )


@kwonly_dataclass
@dataclasses.dataclass
class Link2Config:
    """Second hop: Nakagami-m bins equalized with ZF at the base station.

    Args:
        m: Nakagami shape.
        omega: Nakagami spread Ω.
        tx_power: HAPS transmit power; defaults to the satellite's.
        distance: HAPS to base station distance.
        pathloss_exp: Path-loss exponent.
        noise_power: Noise power at the base station.
        snr_threshold_db: Outage threshold γ_th in dB.
    """

    m: float
    omega: float = 1.0
    tx_power: Optional[float] = None
    distance: float = 1.0
    pathloss_exp: float = 2.0
    noise_power: float = 1.0
    snr_threshold_db: float = 0.0

    def __post_init__(self):
        """Validate the section by building the records it describes."""
        _ = self.nakagami_params, self.budget(default_tx_power=1.0)

    @property
    def nakagami_params(self) -> NakagamiParams:
        """Nakagami parameters of the second hop."""
        return NakagamiParams(m=self.m, omega=self.omega)

    def budget(self, default_tx_power: float) -> LinkBudget:
        """Power budget of the second hop; `default_tx_power` applies when `tx_power` is unset."""
        return LinkBudget(
            tx_power=default_tx_power if self.tx_power is None else self.tx_power,
            distance=self.distance,
            pathloss_exp=self.pathloss_exp,
            noise_power=self.noise_power,
            snr_threshold=_db_to_linear(self.snr_threshold_db),
        )


@kwonly_dataclass
@dataclasses.dataclass
class SweepConfig:
    """Average-SNR sweep in dB, inclusive of both ends."""

    snr_db_start: float = -6.0
    snr_db_stop: float = 6.0
    snr_db_step: float = 1.5

    def __post_init__(self):
        """Validate the sweep."""
        if not all(math.isfinite(value) for value in (self.snr_db_start, self.snr_db_stop, self.snr_db_step)):
            raise PyOtfsValidationError("Sweep bounds and step must be finite.")
        if not self.snr_db_step > 0:
            raise PyOtfsValidationError(f"`snr_db_step` must be positive, got {self.snr_db_step}.")
        if self.snr_db_start > self.snr_db_stop:
            raise PyOtfsValidationError(
                f"`snr_db_start` ({self.snr_db_start}) must not exceed `snr_db_stop` ({self.snr_db_stop})."
            )

    def points(self) -> np.ndarray:
        """SNR grid points start, start + step, ... up to stop."""
        n_points = math.floor((self.snr_db_stop - self.snr_db_start) / self.snr_db_step + 1e-9) + 1
        return self.snr_db_start + self.snr_db_step * np.arange(n_points)


@kwonly_dataclass
@dataclasses.dataclass
class ScenarioConfig:
    """Complete scenario of an outage study."""

    link1: Link1Config
    link2: Link2Config
    grid: OTFSGrid
    mc: MCConfig = dataclasses.field(default_factory=MCConfig)
    sweep: SweepConfig = dataclasses.field(default_factory=SweepConfig)

    @property
    def budget1(self) -> LinkBudget:
        """Power budget of the first hop."""
        return self.link1.budget

    @property
    def budget2(self) -> LinkBudget:
        """Power budget of the second hop."""
        return self.link2.budget(default_tx_power=self.link1.tx_power)

    def budgets_at_snr_db(self, snr_db: float) -> Tuple[LinkBudget, LinkBudget]:
        """Budgets of both hops with transmit powers set to reach the average SNR `snr_db` on each."""
        return budget_at_snr_db(self.budget1, snr_db), budget_at_snr_db(self.budget2, snr_db)
