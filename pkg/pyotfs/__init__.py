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
# noqa: D104
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("pyotfs")
except PackageNotFoundError:
    # package is not installed
    pass

from pyotfs import fading  # noqa: F401
from pyotfs import montecarlo  # noqa: F401
from pyotfs import otfs  # noqa: F401
from pyotfs import outage  # noqa: F401
from pyotfs import specialfns  # noqa: F401
