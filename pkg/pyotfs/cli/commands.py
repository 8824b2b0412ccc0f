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
"""Implementation of the command line subcommands.

Every command computes its whole result before writing anything, so a failing run leaves no partial output file.
"""
import dataclasses
import logging
import pathlib
from typing import Optional, Union

from pyotfs.cli.curves import compute_outage_curve, compute_pdf_fit, write_text
from pyotfs.cli.validation import run_validation
from pyotfs.constants import EXIT_OK, EXIT_VALIDATION_FAILED, FULL_SCALE_TRIALS
from pyotfs.exceptions import PyOtfsValidationError
from pyotfs.scenario.config import ScenarioConfig
from pyotfs.scenario.parser import load_scenario

LOGGER = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]

LINK_CHOICES = {"1": (1,), "2": (2,), "both": (1, 2)}


def with_mc_overrides(
    scenario: ScenarioConfig,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    full_scale: bool = False,
) -> ScenarioConfig:
    """Return the scenario with Monte Carlo settings replaced by the given command line values."""
    overrides = {}
    if full_scale:
        overrides["trials"] = FULL_SCALE_TRIALS
    if trials is not None:
        overrides["trials"] = trials
    if seed is not None:
        overrides["master_seed"] = seed
    if workers is not None:
        overrides["workers"] = workers
    if not overrides:
        return scenario
    LOGGER.debug(f"Overriding Monte Carlo settings with {overrides}")
    return dataclasses.replace(scenario, mc=dataclasses.replace(scenario.mc, **overrides))


def cmd_op_curve(
    config: PathLike,
    out: PathLike,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    full_scale: bool = False,
) -> int:
    """Write the outage-versus-SNR CSV of a scenario.

    Args:
        config: Scenario file or preset name
        out: Output CSV path
        trials: Override of the number of Monte Carlo trials
        seed: Override of the master seed
        workers: Override of the number of worker threads
        full_scale: Run 10^7 trials

    Returns:
        Exit code
    """
    scenario = with_mc_overrides(load_scenario(config), trials, seed, workers, full_scale)
    curve = compute_outage_curve(scenario)
    write_text(out, curve.to_csv())
    LOGGER.info(curve.summary())
    return EXIT_OK


def cmd_pdf_fit(
    config: PathLike,
    out: PathLike,
    link: str = "both",
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    full_scale: bool = False,
) -> int:
    """Write histograms, approximation densities and NMSE/KL scores of the φ approximations.

    Args:
        config: Scenario file or preset name
        out: Output CSV path
        link: "1", "2" or "both"
        trials: Override of the number of Monte Carlo trials
        seed: Override of the master seed
        workers: Override of the number of worker threads
        full_scale: Run 10^7 trials

    Returns:
        Exit code
    """
    scenario = with_mc_overrides(load_scenario(config), trials, seed, workers, full_scale)
    report = compute_pdf_fit(scenario, LINK_CHOICES[link])
    write_text(out, report.to_csv())
    for link_index, fit in report.fits.items():
        LOGGER.info(f"link {link_index}: nmse={fit.metrics.nmse:.4g} kl={fit.metrics.kl:.4g}")
    return EXIT_OK


def cmd_validate(seed: int, report_path: Optional[PathLike] = None, tolerance_scale: float = 1.0) -> int:
    """Run the validation suite and print its JSON report.

    Args:
        seed: Master seed of the random instances
        report_path: Optional file receiving a copy of the report
        tolerance_scale: Factor applied to every tolerance

    Returns:
        EXIT_OK when every check passes, EXIT_VALIDATION_FAILED otherwise

    Raises:
        PyOtfsValidationError: if the seed is not an unsigned 64-bit integer
    """
    if isinstance(seed, bool) or not 0 <= seed < 2**64:
        raise PyOtfsValidationError(f"`seed` must be an unsigned 64-bit integer, got {seed}.")
    report = run_validation(seed, tolerance_scale=tolerance_scale)
    content = report.to_json()
    print(content)
    if report_path is not None:
        write_text(report_path, content + "\n")
    if not report.passed:
        LOGGER.error(f"Validation failed: {', '.join(report.failed_checks)}")
        return EXIT_VALIDATION_FAILED
    return EXIT_OK
