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
"""Monte Carlo run configuration."""
import dataclasses

from pyotfs.constants import DEFAULT_HISTOGRAM_BINS, DEFAULT_MASTER_SEED, DEFAULT_TRIALS, MIN_HISTOGRAM_BINS
from pyotfs.exceptions import PyOtfsValidationError
from pyotfs.utils.dataclasses import kwonly_dataclass


@kwonly_dataclass
@dataclasses.dataclass
class MCConfig:
    """Monte Carlo run parameters.

    Results depend only on `trials` and `master_seed`; `workers` changes wall-clock time, never the samples.

    Args:
        trials: Number of independent trials.
        master_seed: Root of every random substream (unsigned 64-bit).
        workers: Number of worker threads.
        histogram_bins: Number of equal-width bins used by the fit metrics.
    """

    trials: int = DEFAULT_TRIALS
    master_seed: int = DEFAULT_MASTER_SEED
    workers: int = 1
    histogram_bins: int = DEFAULT_HISTOGRAM_BINS

    def __post_init__(self):
        """Validate configuration."""
        if self.trials < 1:
            raise PyOtfsValidationError(f"`trials` must be at least 1, got {self.trials}.")
        if not 0 <= self.master_seed < 2**64:
            raise PyOtfsValidationError(f"`master_seed` must be an unsigned 64-bit integer, got {self.master_seed}.")
        if self.workers < 1:
            raise PyOtfsValidationError(f"`workers` must be at least 1, got {self.workers}.")
        if self.histogram_bins < MIN_HISTOGRAM_BINS:
            raise PyOtfsValidationError(
                f"`histogram_bins` must be at least {MIN_HISTOGRAM_BINS}, got {self.histogram_bins}."
            )
