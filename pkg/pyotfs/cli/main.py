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
"""Command line entry point.

    pyotfs op-curve --config fhs --out op.csv [--trials N] [--seed S] [--workers W] [--full-scale]
    pyotfs pdf-fit --config fhs --out fit.csv [--link {1,2,both}] [--trials N] [--seed S] [--workers W]
    pyotfs validate [--seed S] [--report report.json]

Exit codes: 0 success, 1 validation failure, 2 configuration error, 3 violated precondition of the analysis.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pyotfs.cli.commands import LINK_CHOICES, cmd_op_curve, cmd_pdf_fit, cmd_validate
from pyotfs.constants import DEFAULT_MASTER_SEED, EXIT_CONFIG_ERROR, EXIT_PRECONDITION_VIOLATION
from pyotfs.exceptions import (
    PyOtfsConfigError,
    PyOtfsDivergentMomentError,
    PyOtfsDomainError,
    PyOtfsSingularChannelError,
    PyOtfsUndefinedMomentError,
    PyOtfsUnsupportedConfigurationError,
    PyOtfsValidationError,
)
from pyotfs.utils.logging import setup_logging

LOGGER = logging.getLogger("pyotfs.cli")

PRECONDITION_ERRORS = (
    PyOtfsDivergentMomentError,
    PyOtfsUndefinedMomentError,
    PyOtfsUnsupportedConfigurationError,
    PyOtfsDomainError,
    PyOtfsSingularChannelError,
)


def _add_mc_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="Scenario file or preset name (fhs, karasawa)")
    parser.add_argument("--out", required=True, help="Output CSV file")
    parser.add_argument("--trials", type=int, default=None, help="Number of Monte Carlo trials")
    parser.add_argument("--seed", type=int, default=None, help="Master seed of the Monte Carlo streams")
    parser.add_argument("--workers", type=int, default=None, help="Number of worker threads")
    parser.add_argument("--full-scale", action="store_true", help="Run 10^7 Monte Carlo trials")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser of the `pyotfs` command."""
    parser = argparse.ArgumentParser(prog="pyotfs", description=__doc__, formatter_class=argparse.RawTextHelpFormatter)
    parser.add_argument("--verbose", "-v", action="count", default=0, help="Increase log verbosity")
    subparsers = parser.add_subparsers(dest="command", required=True)

    op_curve = subparsers.add_parser("op-curve", help="Outage probability versus average SNR")
    _add_mc_arguments(op_curve)

    pdf_fit = subparsers.add_parser("pdf-fit", help="Histograms and fit scores of the φ approximations")
    _add_mc_arguments(pdf_fit)
    pdf_fit.add_argument("--link", choices=sorted(LINK_CHOICES), default="both", help="Hop(s) to study")

    validate = subparsers.add_parser("validate", help="Run the validation suite")
    validate.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED, help="Master seed of random instances")
    validate.add_argument("--report", default=None, help="Also write the JSON report to this file")
    validate.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "op-curve":
        return cmd_op_curve(args.config, args.out, args.trials, args.seed, args.workers, args.full_scale)
    if args.command == "pdf-fit":
        return cmd_pdf_fit(args.config, args.out, args.link, args.trials, args.seed, args.workers, args.full_scale)
    return cmd_validate(args.seed, args.report, args.tolerance_scale)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the `pyotfs` command.

    Args:
        argv: Command line arguments; defaults to sys.argv[1:]

    Returns:
        Exit code
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        return _run(args)
    except (PyOtfsConfigError, PyOtfsValidationError) as e:
        LOGGER.error(f"Configuration error: {e.message}")
        return EXIT_CONFIG_ERROR
    except PRECONDITION_ERRORS as e:
        LOGGER.error(f"Precondition violated: {e.message}")
        return EXIT_PRECONDITION_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
