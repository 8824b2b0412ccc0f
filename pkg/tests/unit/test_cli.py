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
import json

import pytest

from pyotfs.cli import commands
from pyotfs.cli.main import build_parser, main
from pyotfs.cli.validation import CheckResult, ValidationReport
from pyotfs.constants import (
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_PRECONDITION_VIOLATION,
    EXIT_VALIDATION_FAILED,
    OP_CURVE_HEADER,
    FULL_SCALE_TRIALS,
    PDF_FIT_HEADER,
)
from pyotfs.scenario import load_scenario
from tests.unit.common import write_scenario
from tests.utils import read_csv_rows, read_summary_lines


def _op_curve(config, out, *extra):
    return main(["op-curve", "--config", str(config), "--out", str(out), *extra])


def test_op_curve_writes_sweep(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    out = tmp_path / "op.csv"
    assert _op_curve(config, out) == EXIT_OK

    header, *rows = read_csv_rows(out)
    assert tuple(header) == OP_CURVE_HEADER
    assert [float(row[0]) for row in rows] == [-3.0, 0.0, 3.0]
    for row in rows:
        values = [float(value) for value in row[1:]]
        assert all(0.0 <= value <= 1.0 for value in values)
        op_mc_1, ci1_lo, ci1_hi = values[1:4]
        assert ci1_lo <= op_mc_1 <= ci1_hi

    (summary,) = read_summary_lines(out)
    assert summary.startswith("# summary: max_abs_dev_link1=")
    assert "tolerance=0.03" in summary
    assert "within_tolerance=" in summary


def test_op_curve_is_byte_identical_across_worker_counts(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    single, parallel = tmp_path / "w1.csv", tmp_path / "w4.csv"
    assert _op_curve(config, single, "--workers", "1") == EXIT_OK
    assert _op_curve(config, parallel, "--workers", "4") == EXIT_OK
    assert single.read_bytes() == parallel.read_bytes()


def test_op_curve_seed_override_changes_samples(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    first, second = tmp_path / "s1.csv", tmp_path / "s2.csv"
    assert _op_curve(config, first, "--seed", "1") == EXIT_OK
    assert _op_curve(config, second, "--seed", "2") == EXIT_OK
    assert first.read_bytes() != second.read_bytes()


def test_op_curve_single_point_sweep(tmp_path):
    config = write_scenario(tmp_path / "single.cfg", {"sweep": {"snr_db_start": "1.5", "snr_db_stop": "1.5"}})
    out = tmp_path / "op.csv"
    assert _op_curve(config, out) == EXIT_OK
    _, *rows = read_csv_rows(out)
    assert len(rows) == 1
    assert float(rows[0][0]) == 1.5


def test_op_curve_with_large_antenna_array(tmp_path):
    config = write_scenario(tmp_path / "large.cfg", {"link1": {"antennas": "70"}})
    out = tmp_path / "op.csv"
    assert _op_curve(config, out, "--trials", "500") == EXIT_OK
    _, *rows = read_csv_rows(out)
    assert len(rows) == 3


def test_malformed_config_exits_with_config_error_and_no_output(tmp_path):
    config = tmp_path / "broken.cfg"
    config.write_text("link1.m = \n", encoding="utf-8")
    out = tmp_path / "op.csv"
    assert _op_curve(config, out) == EXIT_CONFIG_ERROR
    assert not out.exists()
    assert _op_curve(tmp_path / "missing.cfg", out) == EXIT_CONFIG_ERROR
    assert not out.exists()


@pytest.mark.parametrize(
    "overrides",
    [
        {"link1": {"antennas": "2"}},
        {"link2": {"m": "2.0"}},
        {"link1": {"m": "4", "antennas": "16"}},
    ],
)
def test_violated_preconditions_exit_with_code_3_and_no_output(tmp_path, overrides):
    config = write_scenario(tmp_path / "unsupported.cfg", overrides)
    out = tmp_path / "op.csv"
    assert _op_curve(config, out) == EXIT_PRECONDITION_VIOLATION
    assert not out.exists()


def test_pdf_fit_writes_histograms_and_scores(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    out = tmp_path / "fit.csv"
    assert main(["pdf-fit", "--config", str(config), "--out", str(out), "--link", "both"]) == EXIT_OK

    header, *rows = read_csv_rows(out)
    assert tuple(header) == PDF_FIT_HEADER
    assert len(rows) == 2 * 20
    assert {row[0] for row in rows} == {"1", "2"}
    summaries = read_summary_lines(out)
    assert [line.split()[1] for line in summaries] == ["link=1", "link=2"]
    assert all("nmse=" in line and "kl=" in line and "bins=20" in line for line in summaries)


def test_pdf_fit_single_link(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    out = tmp_path / "fit.csv"
    assert main(["pdf-fit", "--config", str(config), "--out", str(out), "--link", "2"]) == EXIT_OK
    _, *rows = read_csv_rows(out)
    assert {row[0] for row in rows} == {"2"}


def test_pdf_fit_with_too_few_trials_is_a_precondition_violation(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    out = tmp_path / "fit.csv"
    args = ["pdf-fit", "--config", str(config), "--out", str(out), "--trials", "100"]
    assert main(args) == EXIT_PRECONDITION_VIOLATION
    assert not out.exists()


def test_mc_overrides():
    scenario = load_scenario("fhs")
    assert commands.with_mc_overrides(scenario) is scenario
    assert commands.with_mc_overrides(scenario, full_scale=True).mc.trials == FULL_SCALE_TRIALS
    overridden = commands.with_mc_overrides(scenario, trials=10, seed=3, workers=2, full_scale=True)
    assert (overridden.mc.trials, overridden.mc.master_seed, overridden.mc.workers) == (10, 3, 2)
    assert overridden.link1 == scenario.link1


def test_invalid_override_is_a_config_error(tmp_path):
    config = write_scenario(tmp_path / "small.cfg")
    assert _op_curve(config, tmp_path / "op.csv", "--workers", "0") == EXIT_CONFIG_ERROR


def _report(passed):
    check = CheckResult(name="dummy", tolerance=1.0, observed=0.5 if passed else 2.0, passed=passed)
    return ValidationReport(seed=7, checks=[check])


def test_validate_prints_report_and_maps_exit_code(mocker, capsys, tmp_path):
    run_validation = mocker.patch("pyotfs.cli.commands.run_validation", return_value=_report(True))
    report_path = tmp_path / "report.json"
    assert main(["validate", "--seed", "7", "--report", str(report_path)]) == EXIT_OK
    run_validation.assert_called_once_with(7, tolerance_scale=1.0)
    printed = json.loads(capsys.readouterr().out)
    assert printed["passed"] is True
    assert json.loads(report_path.read_text()) == printed

    mocker.patch("pyotfs.cli.commands.run_validation", return_value=_report(False))
    assert main(["validate", "--tolerance-scale", "0"]) == EXIT_VALIDATION_FAILED
    assert json.loads(capsys.readouterr().out)["checks"][0]["name"] == "dummy"


def test_validate_rejects_negative_seed(mocker):
    run_validation = mocker.patch("pyotfs.cli.commands.run_validation", return_value=_report(True))
    assert main(["validate", "--seed", "-1"]) == EXIT_CONFIG_ERROR
    run_validation.assert_not_called()


def test_parser_requires_command_and_known_link():
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args([])
    with pytest.raises(SystemExit):
        parser.parse_args(["pdf-fit", "--config", "fhs", "--out", "x.csv", "--link", "3"])
    args = parser.parse_args(["-vv", "op-curve", "--config", "fhs", "--out", "x.csv", "--full-scale"])
    assert args.verbose == 2 and args.full_scale
