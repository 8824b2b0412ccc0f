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
import pathlib
from typing import Dict, Optional

from pyotfs.fading import FREQUENT_HEAVY_SHADOWING, NakagamiParams
from pyotfs.montecarlo.config import MCConfig
from pyotfs.otfs.grid import DDPath, OTFSGrid

GRID_4X4 = OTFSGrid(n_doppler=4, m_delay=4)
GRID_8X8 = OTFSGrid(n_doppler=8, m_delay=8)
FHS = FREQUENT_HEAVY_SHADOWING
NAKAGAMI_8 = NakagamiParams(m=8.0)

UNIT_PATH = DDPath(delay_tap=0, doppler_tap=0, gain=1.0)

SMALL_MC = MCConfig(trials=2000, master_seed=7, workers=1, histogram_bins=20)

SMALL_SCENARIO: Dict[str, Dict[str, str]] = {
    "link1": {"m": "1", "b0": "0.063", "omega": "0.0007", "antennas": "4"},
    "link2": {"m": "8.0"},
    "grid": {"n_doppler": "4", "m_delay": "4"},
    "mc": {"trials": "2000", "master_seed": "7", "workers": "1", "histogram_bins": "20"},
    "sweep": {"snr_db_start": "-3.0", "snr_db_stop": "3.0", "snr_db_step": "3.0"},
}


def scenario_text(overrides: Optional[Dict[str, Dict[str, str]]] = None) -> str:
    """Render SMALL_SCENARIO with `overrides` applied as `section.key = value` lines."""
    sections = {section: dict(entries) for section, entries in SMALL_SCENARIO.items()}
    for section, entries in (overrides or {}).items():
        sections.setdefault(section, {}).update(entries)
    lines = [f"{section}.{key} = {value}" for section, entries in sections.items() for key, value in entries.items()]
    return "\n".join(lines) + "\n"


def write_scenario(path: pathlib.Path, overrides: Optional[Dict[str, Dict[str, str]]] = None) -> pathlib.Path:
    path.write_text(scenario_text(overrides), encoding="utf-8")
    return path
