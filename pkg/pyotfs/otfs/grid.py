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
"""Delay-Doppler grid geometry and the records that live on it.

Frames are stored Doppler-major: a frame is a complex array of shape (N, M) whose row n holds the M delay entries
x[n, 0..M-1]. Vectorizing a frame row by row yields the stacking x = [x_0^T ... x_{N-1}^T]^T of the block-circulant
channel model; every bin index (k, l) in this package follows that order.
"""
import dataclasses
import math
from typing import Optional, Tuple

import numpy as np

from pyotfs.exceptions import PyOtfsDomainError, PyOtfsValidationError

DDFrame = np.ndarray
"""Complex array of shape (N, M) holding a delay-Doppler (or time-frequency) frame."""


@dataclasses.dataclass(frozen=True)
class OTFSGrid:
    """OTFS frame geometry.

    Args:
        n_doppler: Number of Doppler bins N (time slots).
        m_delay: Number of delay bins M (subcarriers).
        symbol_period: Optional symbol duration T in seconds.
        subcarrier_spacing: Optional subcarrier spacing Δf in hertz; T·Δf = 1 when both are set.
    """

    n_doppler: int
    m_delay: int
    symbol_period: Optional[float] = None
    subcarrier_spacing: Optional[float] = None

    def __post_init__(self):
        """Validate geometry."""
        for name in ("n_doppler", "m_delay"):
            value = getattr(self, name)
            if isinstance(value, bool) or not math.isfinite(value) or int(value) != value or value < 1:
                raise PyOtfsValidationError(f"`{name}` must be a positive integer, got {value}.")
            object.__setattr__(self, name, int(value))
        for name in ("symbol_period", "subcarrier_spacing"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise PyOtfsValidationError(f"`{name}` must be positive when set, got {value}.")
        if self.symbol_period is not None and self.subcarrier_spacing is not None:
            product = self.symbol_period * self.subcarrier_spacing
            if not math.isclose(product, 1.0, rel_tol=1e-9):
                raise PyOtfsValidationError(f"symbol_period * subcarrier_spacing must equal 1, got {product}.")

    @property
    def shape(self) -> Tuple[int, int]:
        """Frame shape (N, M)."""
        return self.n_doppler, self.m_delay

    @property
    def n_bins(self) -> int:
        """Number of bins N·M."""
        return self.n_doppler * self.m_delay

    @classmethod
    def from_frame(cls, frame: DDFrame) -> "OTFSGrid":
        """Infer the grid of a frame."""
        if np.ndim(frame) != 2:
            raise PyOtfsDomainError(f"Frame must be a 2-D array, got shape {np.shape(frame)}.")
        n_doppler, m_delay = np.shape(frame)
        return cls(n_doppler=n_doppler, m_delay=m_delay)

    def check_frame(self, frame: DDFrame, name: str = "frame") -> np.ndarray:
        """Return `frame` as a complex array after checking its last two axes match the grid.

        Raises:
            PyOtfsDomainError: on shape mismatch
        """
        values = np.asarray(frame, dtype=complex)
        if values.ndim < 2 or values.shape[-2:] != self.shape:
            raise PyOtfsDomainError(f"`{name}` has shape {values.shape}, expected {self.shape}.")
        return values


@dataclasses.dataclass(frozen=True)
class DDPath:
    """Single propagation path with integer delay and Doppler taps."""

    delay_tap: int
    doppler_tap: int
    gain: complex

    def __post_init__(self):
        """Validate taps."""
        for name in ("delay_tap", "doppler_tap"):
            value = getattr(self, name)
            if isinstance(value, bool) or not math.isfinite(value) or int(value) != value or value < 0:
                raise PyOtfsValidationError(f"`{name}` must be a non-negative integer, got {value}.")
            object.__setattr__(self, name, int(value))
        object.__setattr__(self, "gain", complex(self.gain))

    def check_grid(self, grid: OTFSGrid) -> None:
        """Ensure the taps fall inside the grid.

        Raises:
            PyOtfsDomainError: if a tap is out of range
        """
        if self.delay_tap >= grid.m_delay or self.doppler_tap >= grid.n_doppler:
            raise PyOtfsDomainError(
                f"Path taps (delay={self.delay_tap}, doppler={self.doppler_tap}) "
                f"outside of grid N={grid.n_doppler}, M={grid.m_delay}."
            )


@dataclasses.dataclass(frozen=True)
class BinGainGrid:
    """Per-bin frequency gains D^{k,l} of one transmit antenna; entry [k, l] holds D^{k,l}."""

    gains: np.ndarray

    def __post_init__(self):
        """Validate shape."""
        gains = np.asarray(self.gains, dtype=complex)
        if gains.ndim != 2 or gains.size == 0:
            raise PyOtfsValidationError(f"Bin gains must be a non-empty 2-D array, got shape {gains.shape}.")
        object.__setattr__(self, "gains", gains)

    @property
    def grid(self) -> OTFSGrid:
        """Grid the gains live on."""
        return OTFSGrid(n_doppler=self.gains.shape[0], m_delay=self.gains.shape[1])

    @property
    def power(self) -> np.ndarray:
        """Per-bin power |D^{k,l}|²."""
        return np.abs(self.gains) ** 2


@dataclasses.dataclass(frozen=True)
class LinkGain:
    """Large-scale gain of a hop: transmit power and path loss.

    Args:
        distance: Distance d in meters.
        pathloss_exp: Path-loss exponent α.
        tx_power: Transmit power Ps in watts.
    """

    distance: float = 1.0
    pathloss_exp: float = 2.0
    tx_power: float = 1.0

    def __post_init__(self):
        """Validate that all fields are positive."""
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise PyOtfsValidationError(f"`{field.name}` must be positive, got {value}.")

    @property
    def amplitude(self) -> float:
        """Received amplitude scaling √(Ps/d^α)."""
        return math.sqrt(self.tx_power / self.distance**self.pathloss_exp)
