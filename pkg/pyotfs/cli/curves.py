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
"""Outage curves and pdf-fit studies with their CSV layouts.

The CSV column names are a frozen interface for plotting tools. Numbers are written with `.12g` formatting so equal
results give byte-identical files.
"""
import csv
import dataclasses
import io
import logging
import pathlib
from typing import Dict, List, Sequence, Union

from pyotfs.constants import MC_AGREEMENT_TOLERANCE, OP_CURVE_HEADER, PDF_FIT_HEADER
from pyotfs.exceptions import PyOtfsValidationError
from pyotfs.montecarlo.engine import OPEstimate, mc_outage, mc_outage_e2e, sim_phi_rd, sim_phi_sr
from pyotfs.montecarlo.metrics import HistogramFit, fit_histogram
from pyotfs.outage import gamma_approx_from_nakagami, outage_point, phi_sr_stats
from pyotfs.scenario.config import ScenarioConfig

LOGGER = logging.getLogger(__name__)


def format_number(value: float) -> str:
    """Deterministic text form of a number."""
    return format(float(value), ".12g")


@dataclasses.dataclass(frozen=True)
class OutageRow:
    """Analytical and Monte Carlo outage of both hops and of the end-to-end link at one average SNR."""

    snr_db: float
    op_analytical_1: float
    op_mc_1: OPEstimate
    op_analytical_2: float
    op_mc_2: OPEstimate
    op_analytical_e2e: float
    op_mc_e2e: OPEstimate

    def values(self) -> List[float]:
        """Row values in CSV column order."""
        return [
            self.snr_db,
            self.op_analytical_1,
            self.op_mc_1.p_hat,
            self.op_mc_1.ci_low,
            self.op_mc_1.ci_high,
            self.op_analytical_2,
            self.op_mc_2.p_hat,
            self.op_mc_2.ci_low,
            self.op_mc_2.ci_high,
            self.op_analytical_e2e,
            self.op_mc_e2e.p_hat,
            self.op_mc_e2e.ci_low,
            self.op_mc_e2e.ci_high,
        ]


@dataclasses.dataclass(frozen=True)
class OutageCurve:
    """Outage probability versus average SNR."""

    rows: List[OutageRow]

    def __post_init__(self):
        """Validate row ordering."""
        snrs = [row.snr_db for row in self.rows]
        if snrs != sorted(snrs):
            raise PyOtfsValidationError("Outage curve rows must be sorted by SNR.")

    def max_deviation(self) -> Dict[str, float]:
        """Largest |analytical - Monte Carlo| per hop and end to end."""
        if not self.rows:
            return {"link1": 0.0, "link2": 0.0, "e2e": 0.0}
        return {
            "link1": max(abs(row.op_analytical_1 - row.op_mc_1.p_hat) for row in self.rows),
            "link2": max(abs(row.op_analytical_2 - row.op_mc_2.p_hat) for row in self.rows),
            "e2e": max(abs(row.op_analytical_e2e - row.op_mc_e2e.p_hat) for row in self.rows),
        }

    def summary(self, tolerance: float = MC_AGREEMENT_TOLERANCE) -> str:
        """Trailing summary line of the CSV file."""
        deviation = self.max_deviation()
        within = all(value <= tolerance for value in deviation.values())
        parts = [f"max_abs_dev_{name}={format_number(value)}" for name, value in deviation.items()]
        return (
            f"# summary: {' '.join(parts)} tolerance={format_number(tolerance)} "
            f"within_tolerance={str(within).lower()}"
        )

    def to_csv(self) -> str:
        """Render the curve as CSV text."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(OP_CURVE_HEADER)
        for row in self.rows:
            writer.writerow([format_number(value) for value in row.values()])
        buffer.write(self.summary() + "\n")
        return buffer.getvalue()


def compute_outage_curve(scenario: ScenarioConfig) -> OutageCurve:
    """Sweep the average SNR of both hops and compute analytical and Monte Carlo outage at every point.

    φ is sampled once per hop and thresholded at every SNR point.

    Raises:
        PyOtfsDivergentMomentError: if the first hop has K <= 2 antennas
        PyOtfsUndefinedMomentError: if the second hop has m <= 2
    """
    link1, link2, grid, mc = scenario.link1, scenario.link2, scenario.grid, scenario.mc
    stats = phi_sr_stats(link1.sr_params, link1.antennas, grid)
    approx = gamma_approx_from_nakagami(link2.nakagami_params, grid)
    phi1 = sim_phi_sr(link1.sr_params, link1.antennas, grid, mc)
    phi2 = sim_phi_rd(link2.nakagami_params, grid, mc)

    rows = []
    for snr_db in scenario.sweep.points():
        budget1, budget2 = scenario.budgets_at_snr_db(float(snr_db))
        point = outage_point(stats, approx, budget1, budget2)
        rows.append(
            OutageRow(
                snr_db=float(snr_db),
                op_analytical_1=point.p_link1,
                op_mc_1=mc_outage(phi1, budget1),
                op_analytical_2=point.p_link2,
                op_mc_2=mc_outage(phi2, budget2),
                op_analytical_e2e=point.p_e2e,
                op_mc_e2e=mc_outage_e2e(phi1, phi2, budget1, budget2),
            )
        )
        LOGGER.debug(f"SNR {snr_db} dB: analytical {point}")
    return OutageCurve(rows=rows)


@dataclasses.dataclass(frozen=True)
class PdfFitReport:
    """Histogram fits of the φ approximations, keyed by hop number."""

    fits: Dict[int, HistogramFit]

    def to_csv(self) -> str:
        """Render bins of every hop followed by one summary line per hop."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(PDF_FIT_HEADER)
        for link, fit in self.fits.items():
            for low, high, empirical, model in zip(
                fit.edges[:-1], fit.edges[1:], fit.empirical_density, fit.model_density
            ):
                writer.writerow([str(link), *(format_number(value) for value in (low, high, empirical, model))])
        for link, fit in self.fits.items():
            metrics = fit.metrics
            low, high = metrics.support
            buffer.write(
                f"# link={link} nmse={format_number(metrics.nmse)} kl={format_number(metrics.kl)} "
                f"bins={metrics.bins} support={format_number(low)}:{format_number(high)}\n"
            )
        return buffer.getvalue()


def compute_pdf_fit(scenario: ScenarioConfig, links: Sequence[int] = (1, 2)) -> PdfFitReport:
    """Sample φ of the requested hops and score the Gaussian (hop 1) and Gamma (hop 2) approximations."""
    link1, link2, grid, mc = scenario.link1, scenario.link2, scenario.grid, scenario.mc
    fits = {}
    if 1 in links:
        stats = phi_sr_stats(link1.sr_params, link1.antennas, grid)
        samples = sim_phi_sr(link1.sr_params, link1.antennas, grid, mc)
        fits[1] = fit_histogram(samples, stats.pdf, mc)
    if 2 in links:
        approx = gamma_approx_from_nakagami(link2.nakagami_params, grid)
        samples = sim_phi_rd(link2.nakagami_params, grid, mc)
        fits[2] = fit_histogram(samples, approx.pdf, mc)
    return PdfFitReport(fits=fits)


def write_text(path: Union[str, pathlib.Path], content: str) -> None:
    """Write `content` to `path`, creating parent directories."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    LOGGER.info(f"Wrote {path}")
