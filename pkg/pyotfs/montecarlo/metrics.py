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
"""Histogram goodness-of-fit scores of the φ approximations.

The histogram spans the 0.1 % to 99.9 % sample quantiles with `histogram_bins` equal-width bins. NMSE compares bin
densities, Σ(p̂ - p)² / Σ p̂², with p̂ the empirical and p the model density at bin centers. KL divergence compares
bin probability masses, Σ m̂ log(m̂ / m), with model masses renormalized over the support and floored at KL_MASS_FLOOR.
"""
import dataclasses
import logging
from typing import Callable, Tuple

import numpy as np
from scipy import special

from pyotfs.constants import HISTOGRAM_QUANTILES, KL_MASS_FLOOR
from pyotfs.exceptions import PyOtfsDomainError
from pyotfs.montecarlo.config import MCConfig

LOGGER = logging.getLogger(__name__)

ModelPdf = Callable[[np.ndarray], np.ndarray]


@dataclasses.dataclass(frozen=True)
class FitMetrics:
    """Scores of one approximation against its samples."""

    nmse: float
    kl: float
    bins: int
    support: Tuple[float, float]


@dataclasses.dataclass(frozen=True)
class HistogramFit:
    """Histogram of the samples, model density on the same bins, and the resulting scores."""

    edges: np.ndarray
    empirical_density: np.ndarray
    model_density: np.ndarray
    metrics: FitMetrics

    @property
    def centers(self) -> np.ndarray:
        """Bin centers."""
        return 0.5 * (self.edges[:-1] + self.edges[1:])


def fit_histogram(samples, model_pdf: ModelPdf, cfg: MCConfig) -> HistogramFit:
    """Histogram the samples and score `model_pdf` against them.

    Args:
        samples: Samples of φ
        model_pdf: Vectorized density of the approximation
        cfg: Monte Carlo configuration (for `histogram_bins`)

    Returns:
        HistogramFit

    Raises:
        PyOtfsDomainError: with fewer than 10 samples per bin, or a degenerate support
    """
    values = np.asarray(samples, dtype=float).reshape(-1)
    bins = cfg.histogram_bins
    if values.size < 10 * bins:
        raise PyOtfsDomainError(f"At least {10 * bins} samples are needed for {bins} bins, got {values.size}.")
    low, high = (float(q) for q in np.quantile(values, HISTOGRAM_QUANTILES))
    if not high > low:
        raise PyOtfsDomainError(f"Histogram support is degenerate: [{low}, {high}].")

    counts, edges = np.histogram(values, bins=bins, range=(low, high))
    widths = np.diff(edges)
    empirical_mass = counts / counts.sum()
    empirical_density = empirical_mass / widths
    centers = 0.5 * (edges[:-1] + edges[1:])
    model_density = np.asarray(model_pdf(centers), dtype=float)

    nmse = float(np.sum((empirical_density - model_density) ** 2) / np.sum(empirical_density**2))

    model_mass = model_density * widths
    if model_mass.sum() > 0:
        model_mass = model_mass / model_mass.sum()
    model_mass = np.maximum(model_mass, KL_MASS_FLOOR)
    kl = max(0.0, float(np.sum(special.rel_entr(empirical_mass, model_mass))))

    metrics = FitMetrics(nmse=nmse, kl=kl, bins=bins, support=(low, high))
    LOGGER.debug(f"Fit of {values.size} samples: {metrics}")
    return HistogramFit(edges=edges, empirical_density=empirical_density, model_density=model_density, metrics=metrics)


def fit_metrics(samples, model_pdf: ModelPdf, cfg: MCConfig) -> FitMetrics:
    """NMSE and KL divergence of `model_pdf` against the histogram of `samples`."""
    return fit_histogram(samples, model_pdf, cfg).metrics
