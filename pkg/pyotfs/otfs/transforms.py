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
"""Symplectic finite Fourier transforms between the delay-Doppler and time-frequency domains.

Both transforms are unitary (orthonormal FFT scaling), so `sfft(isfft(x, tx_power))` returns √Ps·x.
Leading dimensions are treated as a batch of frames; the last two axes are (N, M).
"""
import math

import numpy as np

from pyotfs.exceptions import PyOtfsDomainError
from pyotfs.otfs.grid import DDFrame


def _as_frame(frame: DDFrame, name: str) -> np.ndarray:
    values = np.asarray(frame, dtype=complex)
    if values.ndim < 2:
        raise PyOtfsDomainError(f"`{name}` must be a frame of at least 2 dimensions, got shape {values.shape}.")
    return values


def isfft(x: DDFrame, tx_power: float = 1.0) -> np.ndarray:
    """Map a delay-Doppler frame to the time-frequency domain.

    X_tf[k, l] = √Ps/√(NM) Σ_n Σ_m x[n, m] e^{j2π(nk/N - ml/M)}

    Args:
        x: Delay-Doppler frame of shape (N, M)
        tx_power: Transmit power Ps; the output energy is Ps times the input energy

    Returns:
        Time-frequency frame of shape (N, M)
    """
    if not tx_power >= 0:
        raise PyOtfsDomainError(f"Transmit power must be non-negative, got {tx_power}.")
    values = _as_frame(x, "x")
    return math.sqrt(tx_power) * np.fft.ifft(np.fft.fft(values, axis=-1, norm="ortho"), axis=-2, norm="ortho")


def sfft(y_tf: DDFrame) -> np.ndarray:
    """Map a time-frequency frame back to the delay-Doppler domain.

    Y[n, m] = 1/√(NM) Σ_k Σ_l Y_tf[k, l] e^{-j2π(kn/N - lm/M)}

    Args:
        y_tf: Time-frequency frame of shape (N, M)

    Returns:
        Delay-Doppler frame of shape (N, M)
    """
    values = _as_frame(y_tf, "y_tf")
    return np.fft.ifft(np.fft.fft(values, axis=-2, norm="ortho"), axis=-1, norm="ortho")
