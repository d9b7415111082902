# Copyright 2021 The repeaterlab authors
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

from repeaterlab.model import ChannelParams, HardwareParams, RepeaterConfig, \
    end_to_end_rate, plob_rate, resource_requirements
from repeaterlab.envelope import exact_envelope, envelope_sweep, crossover_distance
from repeaterlab.simulation import SimConfig, simulate_rate, simulate_wait_times
from repeaterlab.config import load_config
import sys

try:
    from .version import VERSION
except ImportError:
    VERSION = 'UNRELEASED'

__version__ = VERSION


__all__ = ['ChannelParams', 'HardwareParams', 'RepeaterConfig', 'end_to_end_rate',
           'plob_rate', 'resource_requirements',
           'exact_envelope', 'envelope_sweep', 'crossover_distance',
           'SimConfig', 'simulate_rate', 'simulate_wait_times',
           'load_config', 'VERSION', '__version__']

if sys.hexversion < 0x030700f0:
    raise RuntimeError('repeaterlab requires Python 3.7+')
