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
"""Reproducible Monte Carlo validation of the outage analysis."""
from pyotfs.montecarlo.config import MCConfig  # noqa: F401
from pyotfs.montecarlo.consistency import (  # noqa: F401
    ConsistencyReport,
    frame_consistency_check,
    run_consistency_suite,
)
from pyotfs.montecarlo.engine import (  # noqa: F401
    OPEstimate,
    mc_outage,
    mc_outage_e2e,
    sim_phi_rd,
    sim_phi_sr,
    wilson_interval,
)
from pyotfs.montecarlo.metrics import FitMetrics, HistogramFit, fit_histogram, fit_metrics  # noqa: F401
from pyotfs.montecarlo.streams import run_blocks, substream  # noqa: F401
