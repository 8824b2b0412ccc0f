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
"""Set of utils to obtain properties of pyotfs distribution."""
import logging
import pathlib
from typing import List

LOGGER = logging.getLogger(__name__)


def get_root_module_path() -> pathlib.Path:
    """Obtain path to pyotfs module.

    Returns:
        Path to pyotfs root module in site or if installed in editable model - local.
    """
    pyotfs_module_path = pathlib.Path(__file__).parent.parent
    LOGGER.debug("Obtained pyotfs module path: %s", pyotfs_module_path)
    return pyotfs_module_path


def get_presets_path() -> pathlib.Path:
    """Obtain path to directory with shipped scenario presets.

    Returns:
        Path to directory with `*.cfg` preset files.
    """
    presets_path = get_root_module_path() / "scenario" / "presets"
    LOGGER.debug("Obtained presets path: %s", presets_path)
    return presets_path


def list_presets() -> List[str]:
    """List names of shipped scenario presets.

    Returns:
        Sorted preset names without the `.cfg` suffix.
    """
    return sorted(path.stem for path in get_presets_path().glob("*.cfg"))
