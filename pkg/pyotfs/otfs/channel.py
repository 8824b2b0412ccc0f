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
"""Delay-Doppler channel: path kernels, per-bin gains, and the frame-level channel.

The block-circulant DD channel matrix induced by integer-tap paths acts on a frame as a 2-D circular convolution
with the sparse kernel a[doppler_tap, delay_tap] = gain. The SFFT diagonalizes it, so the channel is applied as
`isfft(D * sfft(x))` with D from `bin_gains_from_paths`. Dense NM x NM matrices are only built by the oracle helpers
`dd_channel_matrix` and `dft_kron_operator`, which refuse grids larger than ORACLE_MAX_BINS.
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from pyotfs.constants import ORACLE_MAX_BINS
from pyotfs.exceptions import PyOtfsDomainError
from pyotfs.otfs.grid import BinGainGrid, DDFrame, DDPath, LinkGain, OTFSGrid
from pyotfs.otfs.transforms import isfft, sfft

LOGGER = logging.getLogger(__name__)

SECONDARY_PATH_SCALE = 0.3


def dd_kernel(paths: Sequence[DDPath], grid: OTFSGrid) -> np.ndarray:
    """Build the sparse first column of the DD channel matrix as an (N, M) kernel.

    Paths sharing both taps are summed.

    Raises:
        PyOtfsDomainError: for an empty path list or taps outside of the grid
    """
    paths = list(paths)
    if not paths:
        raise PyOtfsDomainError("At least one path is required to build a channel.")
    kernel = np.zeros(grid.shape, dtype=complex)
    for path in paths:
        path.check_grid(grid)
        kernel[path.doppler_tap, path.delay_tap] += path.gain
    return kernel


def bin_gains_from_paths(paths: Sequence[DDPath], grid: OTFSGrid) -> BinGainGrid:
    """Compute the per-bin frequency gains of a path set.

    D^{k,l} = Σ_p g_p e^{j2π l m_p/M} e^{-j2π k n_p/N}, with (m_p, n_p) the delay and Doppler taps.

    Args:
        paths: Channel paths
        grid: Frame geometry

    Returns:
        BinGainGrid of shape (N, M)
    """
    kernel = dd_kernel(paths, grid)
    gains = grid.m_delay * np.fft.ifft(np.fft.fft(kernel, axis=0), axis=1)
    return BinGainGrid(gains=gains)


def apply_dd_channel(
    x: DDFrame,
    paths: Sequence[DDPath],
    link: LinkGain,
    noise_power: float,
    substream: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """Pass a delay-Doppler frame through the channel and add receiver noise.

    y = √(Ps/d^α) H x + w, with H the block-circulant matrix of `paths` applied through the SFFT diagonalization
    and w circular complex Gaussian with power `noise_power` per entry.

    Args:
        x: Transmitted frame of shape (N, M)
        paths: Channel paths
        link: Transmit power and path loss
        noise_power: Noise power σ² per entry
        substream: Random generator for the noise; required when noise_power > 0

    Returns:
        Received frame of shape (N, M)
    """
    grid = OTFSGrid.from_frame(x)
    values = grid.check_frame(x, "x")
    if not noise_power >= 0:
        raise PyOtfsDomainError(f"Noise power must be non-negative, got {noise_power}.")
    d_grid = bin_gains_from_paths(paths, grid)
    y = link.amplitude * isfft(d_grid.gains * sfft(values))
    if noise_power > 0:
        if substream is None:
            raise PyOtfsDomainError("A random substream is required to draw noise.")
        y = y + complex_noise(grid, noise_power, substream)
    return y


def complex_noise(grid: OTFSGrid, noise_power: float, substream: np.random.Generator, draws: Optional[int] = None):
    """Draw circular complex Gaussian noise frames with `noise_power` per entry.

    Returns:
        Array of shape (N, M), or (draws, N, M) when `draws` is given
    """
    shape = grid.shape if draws is None else (draws, *grid.shape)
    scale = math.sqrt(noise_power / 2.0)
    return scale * substream.standard_normal(shape) + 1j * scale * substream.standard_normal(shape)


def random_qpsk_frame(grid: OTFSGrid, substream: np.random.Generator) -> np.ndarray:
    """Draw a unit-energy-per-symbol QPSK frame."""
    bits = substream.integers(0, 2, size=(2, *grid.shape))
    return ((2 * bits[0] - 1) + 1j * (2 * bits[1] - 1)) / math.sqrt(2.0)


def random_paths(
    grid: OTFSGrid, n_paths: int, substream: np.random.Generator, dominant: bool = True
) -> List[DDPath]:
    """Draw a channel with distinct integer taps.

    With `dominant`, the first path has unit magnitude and random phase and the others are CN(0, 0.3²), so every
    bin stays away from zero; otherwise all gains are CN(0, 1).

    Args:
        grid: Frame geometry
        n_paths: Number of paths, at most N·M
        substream: Random generator
        dominant: Whether to draw a dominant first path

    Returns:
        List of DDPath
    """
    if n_paths < 1 or n_paths > grid.n_bins:
        raise PyOtfsDomainError(f"Number of paths must be in [1, {grid.n_bins}], got {n_paths}.")
    taps = substream.choice(grid.n_bins, size=n_paths, replace=False)
    gains = (substream.standard_normal(n_paths) + 1j * substream.standard_normal(n_paths)) / math.sqrt(2.0)
    if dominant:
        gains = gains * SECONDARY_PATH_SCALE
        gains[0] = np.exp(1j * substream.uniform(0.0, 2.0 * np.pi))
    paths = []
    for tap, gain in zip(taps, gains):
        doppler_tap, delay_tap = divmod(int(tap), grid.m_delay)
        paths.append(DDPath(delay_tap=delay_tap, doppler_tap=doppler_tap, gain=complex(gain)))
    return paths


def _check_oracle_size(grid: OTFSGrid) -> None:
    if grid.n_bins > ORACLE_MAX_BINS:
        raise PyOtfsDomainError(
            f"Explicit matrices are limited to N*M <= {ORACLE_MAX_BINS} bins, got {grid.n_bins}."
        )


def dd_channel_matrix(paths: Sequence[DDPath], grid: OTFSGrid) -> np.ndarray:
    """Build the explicit NM x NM block-circulant DD channel matrix.

    H[n·M + m, n'·M + m'] = a[(n - n') mod N, (m - m') mod M] for the kernel a of `dd_kernel`.

    Raises:
        PyOtfsDomainError: for grids larger than ORACLE_MAX_BINS
    """
    _check_oracle_size(grid)
    kernel = dd_kernel(paths, grid)
    n, m = np.divmod(np.arange(grid.n_bins), grid.m_delay)
    return kernel[(n[:, None] - n[None, :]) % grid.n_doppler, (m[:, None] - m[None, :]) % grid.m_delay]


def dft_kron_operator(grid: OTFSGrid) -> np.ndarray:
    """Build the explicit unitary operator F_N ⊗ F_M^H that realizes `sfft` on row-major vectorized frames.

    Raises:
        PyOtfsDomainError: for grids larger than ORACLE_MAX_BINS
    """
    _check_oracle_size(grid)
    f_n = np.fft.fft(np.eye(grid.n_doppler), axis=0, norm="ortho")
    f_m = np.fft.fft(np.eye(grid.m_delay), axis=0, norm="ortho")
    return np.kron(f_n, f_m.conj().T)
