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
"""Zero-forcing equalization, MRT weighting, and the noise-enhancement statistic φ."""
import logging
from typing import List, Sequence

import numpy as np

from pyotfs.constants import SINGULAR_BIN_RELATIVE
from pyotfs.exceptions import PyOtfsDomainError, PyOtfsSingularChannelError
from pyotfs.otfs.channel import dft_kron_operator
from pyotfs.otfs.grid import BinGainGrid, DDFrame, LinkGain, OTFSGrid
from pyotfs.otfs.transforms import isfft, sfft

LOGGER = logging.getLogger(__name__)


def _check_nonsingular(magnitudes: np.ndarray) -> None:
    """Raise on bins with zero magnitude or magnitude below SINGULAR_BIN_RELATIVE of the largest one."""
    largest = float(np.max(magnitudes))
    weakest = np.unravel_index(int(np.argmin(magnitudes)), magnitudes.shape)
    bin_index = (int(weakest[0]), int(weakest[1]))
    if largest == 0.0 or magnitudes[weakest] <= SINGULAR_BIN_RELATIVE * largest:
        raise PyOtfsSingularChannelError(
            f"Channel is singular at bin (k={bin_index[0]}, l={bin_index[1]}) "
            f"with |D|={magnitudes[weakest]:.3g} (max |D|={largest:.3g}).",
            bin_index=bin_index,
        )


def _stack(d_grids: Sequence[BinGainGrid]) -> np.ndarray:
    d_grids = list(d_grids)
    if not d_grids:
        raise PyOtfsDomainError("At least one antenna gain grid is required.")
    shapes = {d_grid.gains.shape for d_grid in d_grids}
    if len(shapes) != 1:
        raise PyOtfsDomainError(f"All antenna gain grids must share a shape, got {sorted(shapes)}.")
    return np.stack([d_grid.gains for d_grid in d_grids])


def zf_equalize(y: DDFrame, d_grid: BinGainGrid) -> np.ndarray:
    """Zero-forcing equalization Θ y with Θ = (F_N^H ⊗ F_M) D^{-1} (F_N ⊗ F_M^H), applied through FFTs.

    Args:
        y: Received delay-Doppler frame
        d_grid: Per-bin gains of the channel

    Returns:
        Equalized delay-Doppler frame

    Raises:
        PyOtfsSingularChannelError: if a bin is zero or numerically zero
    """
    values = d_grid.grid.check_frame(y, "y")
    _check_nonsingular(np.abs(d_grid.gains))
    return isfft(sfft(values) / d_grid.gains)


def phi_zf(d_grid: BinGainGrid) -> float:
    """Noise-enhancement factor φ = (1/NM) Σ_{k,l} |D^{k,l}|^{-2} of ZF equalization.

    Raises:
        PyOtfsSingularChannelError: if a bin is zero or numerically zero
    """
    magnitudes = np.abs(d_grid.gains)
    _check_nonsingular(magnitudes)
    return float(np.mean(magnitudes**-2.0))


def zf_noise_covariance(d_grid: BinGainGrid, noise_power: float = 1.0) -> np.ndarray:
    """Explicit covariance σ² Θ Θ^H of ZF-equalized white noise (small-grid oracle)."""
    _check_nonsingular(np.abs(d_grid.gains))
    operator = dft_kron_operator(d_grid.grid)
    inverse_power = np.abs(d_grid.gains.reshape(-1)) ** -2.0
    return noise_power * (operator.conj().T * inverse_power[None, :]) @ operator


def _combined_magnitude(d_grids: Sequence[BinGainGrid]) -> np.ndarray:
    combined = np.sqrt(np.sum(np.abs(_stack(d_grids)) ** 2, axis=0))
    _check_nonsingular(combined)
    return combined


def mrt_weights(d_grids: Sequence[BinGainGrid]) -> List[np.ndarray]:
    """Per-bin MRT weights w_i^{k,l} = conj(D_i^{k,l}) / √(Σ_k |D_k^{k,l}|²).

    Args:
        d_grids: Gain grids of the K transmit antennas

    Returns:
        One complex weight grid per antenna; every bin's weight vector has unit norm

    Raises:
        PyOtfsSingularChannelError: if a bin is zero across all antennas
    """
    combined = _combined_magnitude(d_grids)
    return [d_grid.gains.conj() / combined for d_grid in d_grids]


def mrt_effective_grid(d_grids: Sequence[BinGainGrid]) -> BinGainGrid:
    """Effective gains Σ_i D_i w_i = √(Σ_k |D_k|²) seen after MRT weighting (real, non-negative)."""
    return BinGainGrid(gains=_combined_magnitude(d_grids).astype(complex))


def mrt_precode(x: DDFrame, d_grids: Sequence[BinGainGrid]) -> List[np.ndarray]:
    """Spread a frame over K antennas with the MRT weights applied per frequency bin.

    Sending antenna i's frame through its own channel and summing over antennas yields the frame seen through
    `mrt_effective_grid`.

    Args:
        x: Delay-Doppler frame to transmit
        d_grids: Gain grids of the K transmit antennas

    Returns:
        One delay-Doppler frame per antenna
    """
    grid = d_grids[0].grid if d_grids else OTFSGrid.from_frame(x)
    symbols = sfft(grid.check_frame(x, "x"))
    return [isfft(weights * symbols) for weights in mrt_weights(d_grids)]


def phi_mrt(d_grids: Sequence[BinGainGrid]) -> float:
    """Noise-enhancement factor φ = (1/NM) Σ_{k,l} 1/Σ_k |D_k^{k,l}|² of MRT followed by ZF."""
    combined = _combined_magnitude(d_grids)
    return float(np.mean(combined**-2.0))


def snr_from_phi(phi: float, link: LinkGain, noise_power: float) -> float:
    """Post-equalization SNR γ = Ps / (σ² φ d^α).

    Args:
        phi: Noise-enhancement factor
        link: Transmit power and path loss
        noise_power: Noise power σ²

    Returns:
        Linear SNR
    """
    if not phi > 0 or not noise_power > 0:
        raise PyOtfsDomainError(f"φ and noise power must be positive, got phi={phi}, noise_power={noise_power}.")
    return link.tx_power / (noise_power * phi * link.distance**link.pathloss_exp)
