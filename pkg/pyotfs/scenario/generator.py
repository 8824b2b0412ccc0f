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
"""Generator class for writing scenario files.

The class consumes the ScenarioConfig object as a constructor argument and produces the scenario in form of dict or
`section.key = value` file that ScenarioConfigParser reads back to an equal object.

    Typical usage example:

        scenario = load_scenario("fhs")
        generator = ScenarioConfigGenerator(scenario)
        generator.to_file("/path/to/scenario.cfg")
"""
import dataclasses
import json
import logging
import pathlib
from typing import Any, Dict, Union

from pyotfs.scenario.config import ScenarioConfig
from pyotfs.scenario.parser import SECTIONS

LOGGER = logging.getLogger(__name__)


class ScenarioConfigGenerator:
    """Generate the scenario file content from ScenarioConfig object."""

    def __init__(self, config: ScenarioConfig):
        """Initialize generator.

        Args:
            config: scenario config object
        """
        self._config = config

    def to_file(self, config_path: Union[str, pathlib.Path]) -> str:
        """Serialize ScenarioConfig and save it to config_path.

        Args:
            config_path: path to scenario file

        Returns:
            A string with generated scenario file content
        """
        scenario_dict = self.get_config()
        LOGGER.debug(f"Generated scenario:\n{json.dumps(scenario_dict, indent=4)}")
        lines = [
            f"{section}.{key} = {self._format_value(value)}"
            for section, entries in scenario_dict.items()
            for key, value in entries.items()
        ]
        content = "\n".join(lines) + "\n"

        config_path = pathlib.Path(config_path)
        config_path.parent.mkdir(parents=True, exist_ok=True)
        config_path.write_text(content, encoding="utf-8")
        return content

    def get_config(self) -> Dict[str, Dict[str, Any]]:
        """Create a dictionary of sections with all scenario values.

        Returns:
            Dictionary with scenario data
        """
        return {section: dataclasses.asdict(getattr(self._config, section)) for section in SECTIONS}

    @staticmethod
    def _format_value(value: Any) -> str:
        if value is None:
            return "none"
        return repr(value)
