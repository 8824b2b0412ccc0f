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
"""OTFS frame transforms, delay-Doppler channel, and ZF/MRT equalization."""
from pyotfs.otfs.channel import (  # noqa: F401
    apply_dd_channel,
    bin_gains_from_paths,
    dd_channel_matrix,
    dd_kernel,
    dft_kron_operator,
    random_paths,
    random_qpsk_frame,
)
from pyotfs.otfs.equalization import (  # noqa: F401
    mrt_effective_grid,
    mrt_precode,
    mrt_weights,
    phi_mrt,
    phi_zf,
    snr_from_phi,
    zf_equalize,
    zf_noise_covariance,
)
from pyotfs.otfs.grid import BinGainGrid, DDFrame, DDPath, LinkGain, OTFSGrid  # noqa: F401
from pyotfs.otfs.transforms import isfft, sfft  # noqa: F401
