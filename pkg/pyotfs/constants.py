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
# noqa: D104
"""Constants for pyotfs."""

DEFAULT_TRIALS = 100_000
FULL_SCALE_TRIALS = 10_000_000
DEFAULT_MASTER_SEED = 20240601
DEFAULT_HISTOGRAM_BINS = 50
MIN_HISTOGRAM_BINS = 10

# trials per random substream; fixed so results never depend on the worker count
BLOCK_TRIALS = 256

STREAM_LINK1 = 1
STREAM_LINK2 = 2
STREAM_CONSISTENCY = 3
STREAM_VALIDATION = 4

HISTOGRAM_QUANTILES = (0.001, 0.999)
KL_MASS_FLOOR = 1e-12

# bins with |D| below this fraction of max|D| are treated as singular
SINGULAR_BIN_RELATIVE = 1e-12

# explicit NMxNM matrices are built only for small grids
ORACLE_MAX_BINS = 64

# upper bound for direct enumeration of the K-fold sums
MAX_ENUMERATED_TERMS = 2**18

MC_AGREEMENT_TOLERANCE = 0.03
CONSISTENCY_REL_TOL = 0.02
CONSISTENCY_NOISE_DRAWS = 10_000

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_PRECONDITION_VIOLATION = 3

OP_CURVE_HEADER = (
    "snr_db",
    "op_an_1",
    "op_mc_1",
    "ci1_lo",
    "ci1_hi",
    "op_an_2",
    "op_mc_2",
    "ci2_lo",
    "ci2_hi",
    "op_an_e2e",
    "op_mc_e2e",
    "cie_lo",
    "cie_hi",
)
PDF_FIT_HEADER = ("link", "bin_lo", "bin_hi", "empirical_density", "model_density")
