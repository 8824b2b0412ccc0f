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
"""Validation suite: small-instance oracles and properties of every analytical building block.

Each check measures a non-negative deviation and passes when it stays strictly below its tolerance. The
`tolerance_scale` argument multiplies every tolerance; 0 makes every check fail.

    Typical usage example:

        report = run_validation(seed=7)
        print(report.to_json())
"""
import dataclasses
import json
import logging
import math
import time
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy import integrate

from pyotfs.constants import (
    CONSISTENCY_REL_TOL,
    MC_AGREEMENT_TOLERANCE,
    STREAM_VALIDATION,
)
from pyotfs.fading import (
    FREQUENT_HEAVY_SHADOWING,
    KARASAWA,
    IGParams,
    NakagamiParams,
    mrt_sum_cdf,
    mrt_sum_pdf,
    sr_inverse_moment,
    sr_power_pdf,
)
from pyotfs.montecarlo.config import MCConfig
from pyotfs.montecarlo.consistency import CaseStatus, run_consistency_suite
from pyotfs.montecarlo.engine import mc_outage, sim_phi_rd, sim_phi_sr
from pyotfs.montecarlo.streams import substream
from pyotfs.otfs.channel import (
    apply_dd_channel,
    bin_gains_from_paths,
    dd_channel_matrix,
    random_paths,
    random_qpsk_frame,
)
from pyotfs.otfs.equalization import mrt_effective_grid, phi_mrt, phi_zf, zf_equalize, zf_noise_covariance
from pyotfs.otfs.grid import LinkGain, OTFSGrid
from pyotfs.otfs.transforms import isfft, sfft
from pyotfs.outage import (
    LinkBudget,
    gamma_approx,
    gamma_approx_from_nakagami,
    op_end_to_end,
    op_link_nakagami,
    op_link_sr,
    phi_sr_stats,
)
from pyotfs.specialfns import hyp1f1_direct, hyp1f1_int, q_function, reg_gamma_lower, reg_gamma_upper

LOGGER = logging.getLogger(__name__)

SR_PRESETS = {"fhs": FREQUENT_HEAVY_SHADOWING, "karasawa": KARASAWA}
PIN_TRIALS = 100_000
AGREEMENT_TRIALS = 20_000
# the opposite incomplete-gamma reading must miss the Monte Carlo estimate by at least this much
CONVENTION_SEPARATION = 0.2

CheckFn = Callable[[int], Tuple[float, str]]


@dataclasses.dataclass(frozen=True)
class CheckResult:
    """Outcome of one validation check."""

    name: str
    tolerance: float
    observed: float
    passed: bool
    detail: str = ""


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    """Outcome of the whole suite."""

    seed: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        """Names of the failing checks."""
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        """Machine-readable form of the report."""
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {**dataclasses.asdict(check), "observed": _json_number(check.observed)} for check in self.checks
            ],
        }

    def to_json(self) -> str:
        """Report as indented JSON."""
        return json.dumps(self.to_dict(), indent=2)


def _json_number(value: float):
    return value if math.isfinite(value) else str(value)


def _quad(fn: Callable[[float], float], low: float = 0.0, high: float = np.inf) -> float:
    value, _ = integrate.quad(fn, low, high, limit=200, epsabs=1e-12, epsrel=1e-10)
    return value


def _check_q_symmetry(seed: int) -> Tuple[float, str]:
    xs = np.linspace(-8.0, 8.0, 161)
    deviation = max(abs(q_function(x) + q_function(-x) - 1.0) for x in xs)
    return deviation, "max |Q(x) + Q(-x) - 1| on [-8, 8]"


def _check_q_quadrature(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for x in (-3.0, 0.0, 1.6449, 4.0):
        tail = _quad(lambda u: math.exp(-(u**2) / 2.0) / math.sqrt(2.0 * math.pi), x, np.inf)
        deviation = max(deviation, abs(q_function(x) - tail) / tail)
    return deviation, "relative error of Q against quadrature of the normal density"


def _check_gamma_complement(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for a in (0.5, 1.0, 3.0, 8.0, 64.0):
        for x in np.linspace(0.0, 10.0 * a, 41):
            deviation = max(deviation, abs(reg_gamma_lower(a, x) + reg_gamma_upper(a, x) - 1.0))
    return deviation, "max |P(a, x) + Q(a, x) - 1|"


def _check_hyp1f1_series(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for m in range(1, 11):
        for x in np.linspace(0.0, 50.0, 26):
            direct = hyp1f1_direct(m, float(x))
            deviation = max(deviation, abs(hyp1f1_int(m, float(x)) - direct) / direct)
    return deviation, "relative error of the finite 1F1 series against direct summation, m <= 10, x <= 50"


def _check_sr_pdf_normalization(seed: int) -> Tuple[float, str]:
    deviation = max(abs(_quad(lambda x: sr_power_pdf(p, x)) - 1.0) for p in SR_PRESETS.values())
    return deviation, "|integral of the SR power density - 1| for both presets"


def _check_mrt_pdf_normalization(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for p in SR_PRESETS.values():
        for n_antennas in (1, 2, 4, 8):
            deviation = max(deviation, abs(_quad(lambda z: mrt_sum_pdf(p, n_antennas, z)) - 1.0))
            deviation = max(deviation, abs(mrt_sum_cdf(p, n_antennas, 1e6) - 1.0))
    return deviation, "|integral of the MRT sum density - 1|, K in {1, 2, 4, 8}"


def _check_inverse_moments(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for p in SR_PRESETS.values():
        for n_antennas in (3, 4, 8):
            for n in (1, 2):
                oracle = _quad(lambda z: z**-n * mrt_sum_pdf(p, n_antennas, z))
                deviation = max(deviation, abs(sr_inverse_moment(p, n_antennas, n) - oracle) / oracle)
    return deviation, "relative error of closed-form E[1/rho^n] against quadrature"


def _check_round_trip(seed: int) -> Tuple[float, str]:
    rng = substream(seed, STREAM_VALIDATION, 0)
    deviation = 0.0
    for n_doppler in (2, 4, 8, 16):
        for m_delay in (2, 4, 8, 16):
            x = rng.standard_normal((n_doppler, m_delay)) + 1j * rng.standard_normal((n_doppler, m_delay))
            deviation = max(deviation, float(np.max(np.abs(sfft(isfft(x, 2.0)) - math.sqrt(2.0) * x))))
    return deviation, "max |sfft(isfft(x, Ps)) - sqrt(Ps) x|, N, M in {2, 4, 8, 16}"


def _check_channel_matrix(seed: int) -> Tuple[float, str]:
    rng = substream(seed, STREAM_VALIDATION, 1)
    grid = OTFSGrid(n_doppler=4, m_delay=4)
    deviation = 0.0
    for _ in range(10):
        paths = random_paths(grid, 2, rng, dominant=False)
        x = random_qpsk_frame(grid, rng)
        fast = apply_dd_channel(x, paths, LinkGain(), 0.0)
        explicit = (dd_channel_matrix(paths, grid) @ x.reshape(-1)).reshape(grid.shape)
        deviation = max(deviation, float(np.max(np.abs(fast - explicit))))
    return deviation, "FFT channel against the explicit block-circulant matrix, N = M = 4"


def _check_zf_recovery(seed: int) -> Tuple[float, str]:
    rng = substream(seed, STREAM_VALIDATION, 2)
    grid = OTFSGrid(n_doppler=8, m_delay=8)
    link = LinkGain(distance=2.0, pathloss_exp=2.0, tx_power=3.0)
    deviation = 0.0
    for _ in range(100):
        paths = random_paths(grid, 2, rng)
        x = random_qpsk_frame(grid, rng)
        recovered = zf_equalize(apply_dd_channel(x, paths, link, 0.0), bin_gains_from_paths(paths, grid))
        expected = link.amplitude * x
        deviation = max(deviation, float(np.linalg.norm(recovered - expected) / np.linalg.norm(expected)))
    return deviation, "relative noiseless ZF recovery error over 100 random channels, N = M = 8"


def _check_phi_zf_trace(seed: int) -> Tuple[float, str]:
    rng = substream(seed, STREAM_VALIDATION, 3)
    grid = OTFSGrid(n_doppler=4, m_delay=4)
    deviation = 0.0
    for _ in range(10):
        d_grid = bin_gains_from_paths(random_paths(grid, 3, rng), grid)
        trace = float(np.real(np.trace(zf_noise_covariance(d_grid)))) / grid.n_bins
        deviation = max(deviation, abs(phi_zf(d_grid) - trace) / trace)
    return deviation, "phi_zf against the trace of the explicit ZF noise covariance, N = M = 4"


def _check_phi_mrt(seed: int) -> Tuple[float, str]:
    rng = substream(seed, STREAM_VALIDATION, 4)
    grid = OTFSGrid(n_doppler=4, m_delay=4)
    deviation = 0.0
    for n_antennas in (1, 2, 4):
        d_grids = [bin_gains_from_paths(random_paths(grid, 2, rng), grid) for _ in range(n_antennas)]
        combined = phi_zf(mrt_effective_grid(d_grids))
        deviation = max(deviation, abs(phi_mrt(d_grids) - combined) / combined)
        if n_antennas == 1:
            deviation = max(deviation, abs(phi_mrt(d_grids) - phi_zf(d_grids[0])) / combined)
    return deviation, "phi_mrt against phi_zf of the MRT effective grid, K in {1, 2, 4}"


def _check_frame_consistency(seed: int) -> Tuple[float, str]:
    report = run_consistency_suite(OTFSGrid(n_doppler=8, m_delay=8), MCConfig(master_seed=seed))
    failed = [result.name for result in report.results if result.status == CaseStatus.FAILED]
    if failed or not report.passed:
        return math.inf, f"failing cases: {', '.join(failed) or 'none ran'}"
    return report.max_relative_error, f"max relative error of empirical ZF noise power, {len(report.results)} cases"


def _check_gamma_approx_moments(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for alpha_ig, beta_ig in ((3.0, 3.0), (8.0, 8.0), (5.5, 2.0)):
        ig = IGParams(alpha_ig=alpha_ig, beta_ig=beta_ig)
        for side in (4, 8, 16):
            grid = OTFSGrid(n_doppler=side, m_delay=side)
            approx = gamma_approx(ig, grid)
            deviation = max(deviation, abs(approx.mean - ig.mean) / ig.mean)
            target_variance = ig.variance / grid.n_bins
            deviation = max(deviation, abs(approx.variance - target_variance) / target_variance)
    return deviation, "relative mismatch of Gamma mean/variance against the inverse-gamma bin average"


def _check_nakagami_convention(seed: int) -> Tuple[float, str]:
    grid = OTFSGrid(n_doppler=8, m_delay=8)
    params = NakagamiParams(m=8.0, omega=1.0)
    approx = gamma_approx_from_nakagami(params, grid)
    # threshold one standard deviation above the mean of φ_rd
    t = approx.mean + math.sqrt(approx.variance)
    budget = LinkBudget(tx_power=t)
    analytical = op_link_nakagami(approx, budget)
    estimate = mc_outage(sim_phi_rd(params, grid, MCConfig(trials=PIN_TRIALS, master_seed=seed)), budget)
    deviation = abs(analytical - estimate.p_hat)
    opposite = abs(1.0 - analytical - estimate.p_hat)
    if opposite < CONVENTION_SEPARATION:
        deviation = math.inf
    return deviation, f"analytical={analytical:.6f} mc={estimate.p_hat:.6f} opposite convention off by {opposite:.3f}"


def _check_sr_agreement(seed: int) -> Tuple[float, str]:
    grid = OTFSGrid(n_doppler=8, m_delay=8)
    stats = phi_sr_stats(FREQUENT_HEAVY_SHADOWING, 16, grid)
    samples = sim_phi_sr(FREQUENT_HEAVY_SHADOWING, 16, grid, MCConfig(trials=AGREEMENT_TRIALS, master_seed=seed))
    deviation = 0.0
    for scale in np.linspace(0.9, 1.1, 9):
        budget = LinkBudget(tx_power=scale * stats.mean)
        deviation = max(deviation, abs(op_link_sr(stats, budget) - mc_outage(samples, budget).p_hat))
    return deviation, "max |analytical - MC| outage of the first hop, FHS, K = 16, N = M = 8"


def _check_e2e_dominance(seed: int) -> Tuple[float, str]:
    deviation = 0.0
    for p1 in np.linspace(0.0, 1.0, 21):
        for p2 in np.linspace(0.0, 1.0, 21):
            p_e2e = op_end_to_end(float(p1), float(p2))
            deviation = max(deviation, max(p1, p2) - p_e2e, p_e2e - (p1 + p2))
    return float(deviation), "violation of max(p1, p2) <= p_e2e <= p1 + p2"


CHECKS: List[Tuple[str, float, CheckFn]] = [
    ("q_function_symmetry", 1e-12, _check_q_symmetry),
    ("q_function_quadrature", 1e-10, _check_q_quadrature),
    ("incomplete_gamma_complement", 1e-12, _check_gamma_complement),
    ("hyp1f1_finite_series", 1e-9, _check_hyp1f1_series),
    ("sr_pdf_normalization", 1e-6, _check_sr_pdf_normalization),
    ("mrt_pdf_normalization", 1e-6, _check_mrt_pdf_normalization),
    ("inverse_moment_quadrature", 1e-6, _check_inverse_moments),
    ("sfft_isfft_round_trip", 1e-10, _check_round_trip),
    ("fft_channel_vs_block_circulant", 1e-10, _check_channel_matrix),
    ("zf_noiseless_recovery", 1e-8, _check_zf_recovery),
    ("phi_zf_trace_oracle", 1e-10, _check_phi_zf_trace),
    ("phi_mrt_effective_grid", 1e-10, _check_phi_mrt),
    ("frame_consistency", CONSISTENCY_REL_TOL, _check_frame_consistency),
    ("gamma_approx_moments", 1e-12, _check_gamma_approx_moments),
    ("nakagami_convention_pin", MC_AGREEMENT_TOLERANCE, _check_nakagami_convention),
    ("sr_outage_mc_agreement", MC_AGREEMENT_TOLERANCE, _check_sr_agreement),
    ("end_to_end_dominance", 1e-15, _check_e2e_dominance),
]


def run_validation(seed: int, tolerance_scale: float = 1.0) -> ValidationReport:
    """Run every check of the suite.

    Args:
        seed: Master seed of all random instances
        tolerance_scale: Factor applied to every tolerance

    Returns:
        ValidationReport
    """
    results = []
    for name, tolerance, check_fn in CHECKS:
        start = time.monotonic()
        try:
            observed, detail = check_fn(seed)
        except Exception as e:
            LOGGER.warning(f"Check {name} raised {type(e).__name__}: {e}")
            observed, detail = math.inf, f"{type(e).__name__}: {e}"
        scaled_tolerance = tolerance * tolerance_scale
        passed = bool(observed < scaled_tolerance)
        LOGGER.info(
            f"Check {name}: observed={observed:.3g} tolerance={scaled_tolerance:.3g} "
            f"{'passed' if passed else 'FAILED'} in {time.monotonic() - start:.2f}s"
        )
        results.append(
            CheckResult(name=name, tolerance=scaled_tolerance, observed=float(observed), passed=passed, detail=detail)
        )
    return ValidationReport(seed=seed, checks=results)
