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
import dataclasses

import numpy as np
import pytest

from pyotfs.exceptions import PyOtfsConfigError, PyOtfsValidationError
from pyotfs.fading import FREQUENT_HEAVY_SHADOWING, KARASAWA, NakagamiParams
from pyotfs.montecarlo.config import MCConfig
from pyotfs.otfs.grid import OTFSGrid
from pyotfs.scenario import (
    Link1Config,
    Link2Config,
    ScenarioConfig,
    ScenarioConfigGenerator,
    ScenarioConfigParser,
    SweepConfig,
    load_scenario,
)
from tests.unit.common import SMALL_SCENARIO, scenario_text, write_scenario


def test_presets_are_loaded_by_name():
    fhs = load_scenario("fhs")
    assert fhs.link1.sr_params == FREQUENT_HEAVY_SHADOWING
    assert fhs.link1.antennas == 16
    assert fhs.link2.nakagami_params == NakagamiParams(m=8.0, omega=1.0)
    assert fhs.link2.tx_power is None
    assert fhs.grid == OTFSGrid(n_doppler=8, m_delay=8)
    assert fhs.mc == MCConfig(trials=100_000, master_seed=20240601, workers=1, histogram_bins=50)
    assert len(fhs.sweep.points()) == 9

    karasawa = load_scenario("karasawa")
    assert karasawa.link1.sr_params == KARASAWA
    assert karasawa.link1.antennas == 8


def test_unknown_scenario_raises():
    with pytest.raises(PyOtfsConfigError, match="neither a file nor a preset"):
        load_scenario("no-such-preset")


def test_parse_from_file(tmp_path):
    scenario = ScenarioConfigParser.from_file(write_scenario(tmp_path / "small.cfg"))
    assert scenario.link1 == Link1Config(m=1, b0=0.063, omega=0.0007, antennas=4)
    assert scenario.link2 == Link2Config(m=8.0)
    assert scenario.grid == OTFSGrid(n_doppler=4, m_delay=4)
    assert scenario.mc == MCConfig(trials=2000, master_seed=7, workers=1, histogram_bins=20)
    np.testing.assert_allclose(scenario.sweep.points(), [-3.0, 0.0, 3.0])


def test_parse_from_dict_uses_defaults_for_optional_sections():
    sections = {name: SMALL_SCENARIO[name] for name in ("link1", "link2", "grid")}
    scenario = ScenarioConfigParser.from_dict(sections)
    assert scenario.mc == MCConfig()
    assert scenario.sweep == SweepConfig()


def test_comments_blank_lines_and_exponent_integers(tmp_path):
    content = "# heading\n\n" + scenario_text({"mc": {"trials": "1e5"}}).replace("\n", "  # note\n", 1)
    path = tmp_path / "commented.cfg"
    path.write_text(content, encoding="utf-8")
    assert ScenarioConfigParser.from_file(path).mc.trials == 100_000


def test_generated_file_parses_back_to_equal_scenario(tmp_path):
    for preset in ("fhs", "karasawa"):
        scenario = load_scenario(preset)
        path = tmp_path / f"{preset}.cfg"
        ScenarioConfigGenerator(scenario).to_file(path)
        assert ScenarioConfigParser.from_file(path) == scenario

    scenario = dataclasses.replace(
        load_scenario("fhs"),
        link2=Link2Config(m=3.5, omega=2.0, tx_power=0.25),
        grid=OTFSGrid(n_doppler=4, m_delay=16, symbol_period=1e-4, subcarrier_spacing=1e4),
    )
    path = tmp_path / "custom.cfg"
    content = ScenarioConfigGenerator(scenario).to_file(path)
    assert "link2.tx_power = 0.25" in content
    assert ScenarioConfigParser.from_file(path) == scenario


def test_budgets_follow_link_sections():
    scenario = ScenarioConfigParser.from_dict(SMALL_SCENARIO)
    assert scenario.budget1.snr_threshold == pytest.approx(1.0)
    assert scenario.budget2.tx_power == scenario.link1.tx_power

    budget1, budget2 = scenario.budgets_at_snr_db(10.0)
    assert budget1.tx_power == pytest.approx(10.0)
    assert budget2.tx_power == pytest.approx(10.0)

    link2 = Link2Config(m=8.0, tx_power=2.0, snr_threshold_db=3.0)
    assert link2.budget(default_tx_power=1.0).tx_power == 2.0
    assert link2.budget(default_tx_power=1.0).snr_threshold == pytest.approx(10.0**0.3)


@pytest.mark.parametrize(
    "overrides, message",
    [
        ({"link1": {"colour": "red"}}, "`link1.colour`"),
        ({"link1": {"antennas": "four"}}, "`link1.antennas`"),
        ({"link1": {"antennas": "2.5"}}, "`link1.antennas`"),
        ({"link1": {"b0": "-0.1"}}, "Invalid section `link1`"),
        ({"link2": {"m": "nan"}}, "`link2.m` must be finite"),
        ({"grid": {"n_doppler": "0"}}, "Invalid section `grid`"),
        ({"mc": {"trials": "0"}}, "Invalid section `mc`"),
        ({"sweep": {"snr_db_step": "0"}}, "Invalid section `sweep`"),
        ({"extra": {"key": "1"}}, "Unknown section"),
    ],
)
def test_invalid_entries_raise_config_error(tmp_path, overrides, message):
    path = write_scenario(tmp_path / "invalid.cfg", overrides)
    with pytest.raises(PyOtfsConfigError, match=message):
        ScenarioConfigParser.from_file(path)


def test_missing_entries_raise_config_error():
    sections = {name: dict(entries) for name, entries in SMALL_SCENARIO.items()}
    del sections["link1"]["b0"]
    with pytest.raises(PyOtfsConfigError, match="`link1.b0`"):
        ScenarioConfigParser.from_dict(sections)

    del sections["grid"]
    with pytest.raises(PyOtfsConfigError, match="`grid`"):
        ScenarioConfigParser.from_dict(sections)


@pytest.mark.parametrize(
    "line, message",
    [
        ("link1.m 1", "expected `section.key = value`"),
        ("antennas = 4", "must have the form `section.key`"),
        ("link1.m = 2", "duplicated key `link1.m`"),
    ],
)
def test_malformed_lines_report_location(tmp_path, line, message):
    path = tmp_path / "malformed.cfg"
    path.write_text(scenario_text() + line + "\n", encoding="utf-8")
    with pytest.raises(PyOtfsConfigError, match=message) as excinfo:
        ScenarioConfigParser.from_file(path)
    assert f"{path}:" in str(excinfo.value)


def test_unreadable_file_raises_config_error(tmp_path):
    with pytest.raises(PyOtfsConfigError, match="Could not read"):
        ScenarioConfigParser.from_file(tmp_path)
    path = tmp_path / "binary.cfg"
    path.write_bytes(b"\xff\xfe\x00")
    with pytest.raises(PyOtfsConfigError, match="Could not read"):
        ScenarioConfigParser.from_file(path)


def test_config_records_are_keyword_only():
    with pytest.raises(TypeError, match="positional arguments"):
        Link1Config(1, 0.063, 0.0007, 4)
    with pytest.raises(TypeError):
        SweepConfig(-6.0, 6.0, 1.5)


def test_sweep_points():
    np.testing.assert_allclose(SweepConfig().points(), np.arange(-6.0, 6.0 + 1e-9, 1.5))
    np.testing.assert_allclose(SweepConfig(snr_db_start=2.0, snr_db_stop=2.0).points(), [2.0])
    np.testing.assert_allclose(SweepConfig(snr_db_start=0.0, snr_db_stop=1.0, snr_db_step=0.4).points(), [0, 0.4, 0.8])
    with pytest.raises(PyOtfsValidationError):
        SweepConfig(snr_db_start=3.0, snr_db_stop=-3.0)


def test_scenario_requires_valid_link_records():
    with pytest.raises(PyOtfsValidationError):
        Link1Config(m=1, b0=0.063, omega=0.0007, antennas=0)
    with pytest.raises(PyOtfsValidationError):
        Link2Config(m=0.2)
    scenario = ScenarioConfig(
        link1=Link1Config(m=1, b0=0.063, omega=0.0007, antennas=4),
        link2=Link2Config(m=8.0),
        grid=OTFSGrid(n_doppler=4, m_delay=4),
    )
    assert scenario.mc == MCConfig()
