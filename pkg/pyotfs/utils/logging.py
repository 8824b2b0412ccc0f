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
"""Module with logging related utils."""
import logging

DEFAULT_LOG_FORMAT = "%(asctime)s - %(levelname)8s - %(process)8d - %(threadName)s - %(name)s: %(message)s"


def setup_logging(verbose: int = 0) -> None:
    """Configure the root logger for command line runs.

    Args:
        verbose: 0 logs warnings only, 1 adds info, 2 and above adds debug messages
    """
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=DEFAULT_LOG_FORMAT)
    # numpy/scipy stay silent; quiet the thread pool internals on DEBUG
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)
