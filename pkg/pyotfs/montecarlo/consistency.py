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
"""Frame-level consistency of the bin statistic φ.

The outage analysis only sees φ, the average inverse bin power. This check transmits through the physical
delay-Doppler channel instead: white noise is pushed through the ZF equalizer Θ (after MRT precoding for K > 1
antennas) and its empirical per-entry power is compared with `phi_zf` / `phi_mrt` of the same bin gains. A noiseless
frame is also sent end to end and must be recovered exactly.
"""
import dataclasses
import enum
import logging
from typing import List, Optional, Sequence

import numpy as np

from pyotfs.constants import CONSISTENCY_NOISE_DRAWS, CONSISTENCY_REL_TOL, STREAM_CONSISTENCY
from pyotfs.exceptions import PyOtfsSingularChannelError
from pyotfs.montecarlo.config import MCConfig
from pyotfs.montecarlo.streams import substream
from pyotfs.otfs.channel import apply_dd_channel, bin_gains_from_paths, complex_noise, random_paths, random_qpsk_frame
from pyotfs.otfs.equalization import mrt_effective_grid, mrt_precode, phi_mrt, phi_zf, zf_equalize
from pyotfs.otfs.grid import DDPath, LinkGain, OTFSGrid

LOGGER = logging.getLogger(__name__)

RECOVERY_TOL = 1e-8
NOISE_CHUNK = 1000

PathsPerAntenna = Sequence[Sequence[DDPath]]


class CaseStatus(enum.Enum):
    """Outcome of one consistency case."""

    PASSED = "pass"
    FAILED = "fail"
    SKIPPED = "skipped"


@dataclasses.dataclass(frozen=True)
class ConsistencyCase:
    """Named channel with one path list per transmit antenna."""

    name: str
    paths_per_antenna: List[List[DDPath]]


@dataclasses.dataclass(frozen=True)
class ConsistencyResult:
    """Outcome of one gain draw of a consistency case."""

    name: str
    status: CaseStatus
    phi_analytical: Optional[float] = None
    phi_empirical: Optional[float] = None
    relative_error: Optional[float] = None
    recovery_error: Optional[float] = None
    detail: str = ""


@dataclasses.dataclass(frozen=True)
class ConsistencyReport:
    """Results of a set of consistency cases."""

    results: List[ConsistencyResult]

    @property
    def passed(self) -> bool:
        """True when no case failed and at least one case ran."""
        statuses = [result.status for result in self.results]
        return CaseStatus.FAILED not in statuses and CaseStatus.PASSED in statuses

    @property
    def max_relative_error(self) -> float:
        """Largest relative φ error over the cases that ran."""
        errors = [result.relative_error for result in self.results if result.relative_error is not None]
        return max(errors) if errors else float("nan")


def _rotate(paths_per_antenna: PathsPerAntenna, rng: np.random.Generator) -> List[List[DDPath]]:
    rotated = []
    for paths in paths_per_antenna:
        phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=len(paths)))
        rotated.append([dataclasses.replace(path, gain=path.gain * phase) for path, phase in zip(paths, phases)])
    return rotated


def _empirical_phi(effective, grid: OTFSGrid, rng: np.random.Generator, noise_draws: int) -> float:
    total = 0.0
    remaining = noise_draws
    while remaining > 0:
        chunk = min(NOISE_CHUNK, remaining)
        equalized = zf_equalize(complex_noise(grid, 1.0, rng, draws=chunk), effective)
        total += float(np.sum(np.abs(equalized) ** 2))
        remaining -= chunk
    return total / (noise_draws * grid.n_bins)


def _recovery_error(paths_per_antenna: PathsPerAntenna, d_grids, effective, grid, rng) -> float:
    frame = random_qpsk_frame(grid, rng)
    unit_link = LinkGain()
    if len(paths_per_antenna) == 1:
        received = apply_dd_channel(frame, paths_per_antenna[0], unit_link, 0.0)
    else:
        precoded = mrt_precode(frame, d_grids)
        received = sum(
            apply_dd_channel(antenna_frame, paths, unit_link, 0.0)
            for antenna_frame, paths in zip(precoded, paths_per_antenna)
        )
    recovered = zf_equalize(received, effective)
    return float(np.linalg.norm(recovered - frame) / np.linalg.norm(frame))


def _check_once(name: str, paths_per_antenna: PathsPerAntenna, grid, rng, noise_draws, rel_tol) -> ConsistencyResult:
    d_grids = [bin_gains_from_paths(paths, grid) for paths in paths_per_antenna]
    try:
        if len(d_grids) == 1:
            effective = d_grids[0]
            phi_analytical = phi_zf(effective)
        else:
            effective = mrt_effective_grid(d_grids)
            phi_analytical = phi_mrt(d_grids)
    except PyOtfsSingularChannelError as e:
        LOGGER.warning(f"Skipping consistency case {name}: {e}")
        return ConsistencyResult(name=name, status=CaseStatus.SKIPPED, detail=e.message)

    phi_empirical = _empirical_phi(effective, grid, rng, noise_draws)
    relative_error = abs(phi_empirical - phi_analytical) / phi_analytical
    recovery_error = _recovery_error(paths_per_antenna, d_grids, effective, grid, rng)
    passed = relative_error <= rel_tol and recovery_error <= RECOVERY_TOL
    LOGGER.debug(
        f"Consistency case {name}: φ={phi_analytical}, empirical={phi_empirical}, recovery error={recovery_error}"
    )
    return ConsistencyResult(
        name=name,
        status=CaseStatus.PASSED if passed else CaseStatus.FAILED,
        phi_analytical=phi_analytical,
        phi_empirical=phi_empirical,
        relative_error=relative_error,
        recovery_error=recovery_error,
    )


def frame_consistency_check(
    paths_per_antenna: PathsPerAntenna,
    grid: OTFSGrid,
    cfg: MCConfig,
    *,
    name: str = "channel",
    gain_draws: int = 1,
    case_index: int = 0,
    noise_draws: int = CONSISTENCY_NOISE_DRAWS,
    rel_tol: float = CONSISTENCY_REL_TOL,
) -> ConsistencyReport:
    """Compare the empirical ZF noise enhancement of a channel with its analytical φ.

    The first draw uses the path gains as given; every further draw rotates each gain by a random phase.

    Args:
        paths_per_antenna: One path list per transmit antenna; more than one antenna applies MRT
        grid: Frame geometry
        cfg: Monte Carlo configuration (for the master seed)
        name: Case name used in the report
        gain_draws: Number of gain draws to check
        case_index: Index of the case, selecting its random substream
        noise_draws: Number of noise frames per draw
        rel_tol: Accepted relative φ error

    Returns:
        ConsistencyReport with one result per gain draw
    """
    rng = substream(cfg.master_seed, STREAM_CONSISTENCY, case_index)
    results = []
    for draw in range(gain_draws):
        paths = paths_per_antenna if draw == 0 else _rotate(paths_per_antenna, rng)
        label = name if gain_draws == 1 else f"{name}[{draw}]"
        results.append(_check_once(label, paths, grid, rng, noise_draws, rel_tol))
    return ConsistencyReport(results=results)


def default_consistency_cases(grid: OTFSGrid, rng: np.random.Generator) -> List[ConsistencyCase]:
    """Shipped cases: a single unit path, a dominant two-path channel, and a K=4 MRT channel."""
    n_paths = min(2, grid.n_bins)
    unit_path = DDPath(delay_tap=0, doppler_tap=0, gain=1.0)
    return [
        ConsistencyCase(name="zf-single-unit-path", paths_per_antenna=[[unit_path]]),
        ConsistencyCase(name="zf-two-path", paths_per_antenna=[random_paths(grid, n_paths, rng)]),
        ConsistencyCase(
            name="mrt-four-antennas", paths_per_antenna=[random_paths(grid, n_paths, rng) for _ in range(4)]
        ),
    ]


def run_consistency_suite(
    grid: OTFSGrid, cfg: MCConfig, cases: Optional[Sequence[ConsistencyCase]] = None, gain_draws: int = 3
) -> ConsistencyReport:
    """Run `frame_consistency_check` over the shipped (or given) cases and merge the reports."""
    if cases is None:
        cases = default_consistency_cases(grid, substream(cfg.master_seed, STREAM_CONSISTENCY, 0))
    results = []
    for case_index, case in enumerate(cases, start=1):
        report = frame_consistency_check(
            case.paths_per_antenna, grid, cfg, name=case.name, gain_draws=gain_draws, case_index=case_index
        )
        results.extend(report.results)
    return ConsistencyReport(results=results)
