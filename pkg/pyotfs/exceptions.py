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
"""PyOTFS exceptions definition."""
from typing import Optional, Tuple


class PyOtfsError(Exception):
    """Generic PyOTFS exception."""

    def __init__(self, message: str):
        """Initialize exception with message.

        Args:
            message: Error message
        """
        self._message = message

    def __str__(self) -> str:
        """Return exception as a string.

        Returns:
            Message content
        """
        return self._message

    @property
    def message(self):
        """Get the exception message.

        Returns:
            The message associated with this exception, or None if no message.

        """
        return self._message


class PyOtfsDomainError(PyOtfsError):
    """Argument outside of the domain of a function."""

    pass


class PyOtfsValidationError(PyOtfsError):
    """Invariant of a parameter record violated at construction."""

    pass


class PyOtfsDivergentMomentError(PyOtfsError):
    """Requested inverse moment of the MRT power sum does not exist."""

    pass


class PyOtfsUndefinedMomentError(PyOtfsError):
    """Requested moment of the inverse-gamma law does not exist."""

    pass


class PyOtfsSingularChannelError(PyOtfsError):
    """Frequency bin with zero (or numerically zero) gain where ZF or MRT needs to invert it."""

    def __init__(self, message: str, bin_index: Optional[Tuple[int, int]] = None):
        """Initialize exception with message and the offending bin.

        Args:
            message: Error message
            bin_index: (k, l) index of the offending bin
        """
        super().__init__(message)
        self.bin_index = bin_index


class PyOtfsUnsupportedConfigurationError(PyOtfsError):
    """Configuration outside of what the closed-form analysis covers."""

    pass


class PyOtfsConfigError(PyOtfsError):
    """Scenario configuration file could not be read or is invalid."""

    pass
