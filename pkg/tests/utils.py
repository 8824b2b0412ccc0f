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
import logging
import pathlib
import subprocess
import sys
from typing import List, Optional, Sequence

LOGGER = logging.getLogger(__name__)
DEFAULT_LOG_FORMAT = "%(asctime)s - %(levelname)8s - %(process)8d - %(threadName)s - %(name)s: %(message)s"


class CliRun:
    """Finished `pyotfs` command with its exit code and captured output lines."""

    def __init__(self, cmd: List[str], returncode: int, stdout: str, stderr: str):
        self.cmd = cmd
        self.returncode = returncode
        self.stdout = stdout
        self.stderr = stderr

    @property
    def output(self) -> List[str]:
        return self.stdout.splitlines() + self.stderr.splitlines()


def run_cli(args: Sequence[str], timeout_s: float = 600, workdir: Optional[pathlib.Path] = None) -> CliRun:
    """Run `python -m pyotfs` in a subprocess and log its output line by line."""
    cmd = [sys.executable, "-m", "pyotfs", *args]
    LOGGER.info(f"Running {' '.join(cmd)}")
    completed = subprocess.run(cmd, cwd=workdir, capture_output=True, text=True, timeout=timeout_s, check=False)
    run = CliRun(cmd, completed.returncode, completed.stdout, completed.stderr)
    for line in run.output:
        LOGGER.info(line.rstrip())
    LOGGER.info(f"{' '.join(cmd)} finished with exit code {run.returncode}")
    return run


def read_csv_rows(path: pathlib.Path) -> List[List[str]]:
    """Read a pyotfs CSV file, skipping `#` summary lines."""
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line.split(",") for line in lines if line and not line.startswith("#")]


def read_summary_lines(path: pathlib.Path) -> List[str]:
    return [line for line in path.read_text(encoding="utf-8").splitlines() if line.startswith("#")]
