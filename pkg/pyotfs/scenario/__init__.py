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
"""Scenario files: both hops, grid, Monte Carlo run and SNR sweep."""
from pyotfs.scenario.config import Link1Config, Link2Config, ScenarioConfig, SweepConfig  # noqa: F401
from pyotfs.scenario.generator import ScenarioConfigGenerator  # noqa: F401
from pyotfs.scenario.parser import ScenarioConfigParser, load_scenario  # noqa: F401
