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
"""ScenarioConfigParser class definition.

Scenario files are UTF-8 text with one `section.key = value` entry per line; `#` starts a comment. Sections are
`link1`, `link2`, `grid`, `mc` and `sweep`; `mc` and `sweep` may be omitted.

    Examples of use:

        # Parse from dict
        scenario = ScenarioConfigParser.from_dict({"link1": {"m": "1", ...}, ...})

        # Parse from file
        scenario = ScenarioConfigParser.from_file("/path/to/scenario.cfg")

        # Shipped preset or file
        scenario = load_scenario("fhs")
"""
import dataclasses
import json
import logging
import math
import pathlib
from typing import Any, Dict, Mapping, Union

import typing_inspect

from pyotfs.exceptions import PyOtfsConfigError, PyOtfsValidationError
from pyotfs.montecarlo.config import MCConfig
from pyotfs.otfs.grid import OTFSGrid
from pyotfs.scenario.config import Link1Config, Link2Config, ScenarioConfig, SweepConfig
from pyotfs.utils.distribution import get_presets_path, list_presets

LOGGER = logging.getLogger(__name__)

SECTIONS = {
    "link1": Link1Config,
    "link2": Link2Config,
    "grid": OTFSGrid,
    "mc": MCConfig,
    "sweep": SweepConfig,
}
REQUIRED_SECTIONS = ("link1", "link2", "grid")
NONE_LITERALS = ("", "none")


class ScenarioConfigParser:
    """Provide functionality to parse dictionary or file to ScenarioConfig object."""

    @classmethod
    def from_dict(cls, scenario_dict: Mapping[str, Mapping[str, Any]]) -> ScenarioConfig:
        """Create ScenarioConfig from configuration stored in a dictionary of sections.

        Args:
            scenario_dict: Mapping of section name to a mapping of key to value (text or number)

        Returns:
            A ScenarioConfig object with data parsed from the dictionary

        Raises:
            PyOtfsConfigError: on unknown or missing sections and keys, unparsable values or violated invariants
        """
        LOGGER.debug(f"Parsing scenario from dict: \n{json.dumps(scenario_dict, indent=4, default=str)}")
        unknown_sections = sorted(set(scenario_dict) - set(SECTIONS))
        if unknown_sections:
            raise PyOtfsConfigError(
                f"Unknown section(s) {', '.join(unknown_sections)}. Available sections: {', '.join(SECTIONS)}"
            )
        for section in REQUIRED_SECTIONS:
            if section not in scenario_dict:
                raise PyOtfsConfigError(f"Missing required section `{section}`.")

        sections = {
            section: cls._parse_section(section, scenario_dict[section])
            for section in SECTIONS
            if section in scenario_dict
        }
        return ScenarioConfig(**sections)

    @classmethod
    def from_file(cls, config_path: Union[str, pathlib.Path]) -> ScenarioConfig:
        """Create ScenarioConfig from a `section.key = value` file.

        Args:
            config_path: Path to the scenario file

        Returns:
            A ScenarioConfig object with data parsed from the file
        """
        config_path = pathlib.Path(config_path)
        LOGGER.debug(f"Parsing scenario from file {config_path}")
        try:
            content = config_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise PyOtfsConfigError(f"Could not read scenario file {config_path}: {e}") from e
        return cls.from_dict(cls._parse_lines(content, config_path))

    @classmethod
    def _parse_lines(cls, content: str, config_path: pathlib.Path) -> Dict[str, Dict[str, str]]:
        scenario_dict: Dict[str, Dict[str, str]] = {}
        for line_number, raw_line in enumerate(content.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            location = f"{config_path}:{line_number}"
            if "=" not in line:
                raise PyOtfsConfigError(f"{location}: expected `section.key = value`, got {raw_line.strip()!r}.")
            name, value = (part.strip() for part in line.split("=", 1))
            section, dot, key = name.partition(".")
            if not dot or not section or not key:
                raise PyOtfsConfigError(f"{location}: key {name!r} must have the form `section.key`.")
            entries = scenario_dict.setdefault(section, {})
            if key in entries:
                raise PyOtfsConfigError(f"{location}: duplicated key `{section}.{key}`.")
            entries[key] = value
        return scenario_dict

    @classmethod
    def _parse_section(cls, section: str, entries: Mapping[str, Any]):
        config_cls = SECTIONS[section]
        fields: Dict[str, dataclasses.Field] = {field.name: field for field in dataclasses.fields(config_cls)}
        unknown_keys = sorted(set(entries) - set(fields))
        if unknown_keys:
            raise PyOtfsConfigError(
                f"Unknown key(s) {', '.join(f'`{section}.{key}`' for key in unknown_keys)}. "
                f"Available keys: {', '.join(f'{section}.{name}' for name in fields)}"
            )
        for name, field in fields.items():
            required = field.default is dataclasses.MISSING and field.default_factory is dataclasses.MISSING
            if required and name not in entries:
                raise PyOtfsConfigError(f"Missing required key `{section}.{name}`.")

        values = {name: cls._cast_value(section, fields[name], value) for name, value in entries.items()}
        try:
            return config_cls(**values)
        except PyOtfsValidationError as e:
            raise PyOtfsConfigError(f"Invalid section `{section}`: {e.message}") from e

    @classmethod
    def _cast_value(cls, section: str, field: dataclasses.Field, value: Any):
        field_type = field.type
        if typing_inspect.is_optional_type(field_type):
            if value is None or (isinstance(value, str) and value.strip().lower() in NONE_LITERALS):
                return None
            field_type = field_type.__args__[0]
        try:
            if field_type is int:
                return cls._cast_int(value)
            number = field_type(value)
        except (TypeError, ValueError, OverflowError) as e:
            raise PyOtfsConfigError(f"Could not parse `{section}.{field.name}` = {value!r}: {e}") from e
        if isinstance(number, float) and not math.isfinite(number):
            raise PyOtfsConfigError(f"`{section}.{field.name}` must be finite, got {value!r}.")
        return number

    @staticmethod
    def _cast_int(value: Any) -> int:
        """Accept integer literals and integral floats such as `1e5`."""
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip())
        except ValueError:
            number = float(value)
            if not number.is_integer():
                raise ValueError(f"{value!r} is not an integer") from None
            return int(number)


def load_scenario(path_or_preset: Union[str, pathlib.Path]) -> ScenarioConfig:
    """Load a scenario from a file path or a shipped preset name (e.g. `fhs`, `karasawa`).

    Raises:
        PyOtfsConfigError: if the path does not exist and no preset has that name
    """
    config_path = pathlib.Path(path_or_preset)
    if not config_path.exists() and str(path_or_preset) in list_presets():
        config_path = get_presets_path() / f"{path_or_preset}.cfg"
        LOGGER.info(f"Using preset {path_or_preset} from {config_path}")
    if not config_path.exists():
        raise PyOtfsConfigError(
            f"Scenario {path_or_preset} is neither a file nor a preset. Available presets: {', '.join(list_presets())}"
        )
    return ScenarioConfigParser.from_file(config_path)
