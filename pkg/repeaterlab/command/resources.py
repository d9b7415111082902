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

from repeaterlab import config
from repeaterlab.command.rate import write_fields
from repeaterlab.config import ConfigError
from repeaterlab.model import register_occupancy, resource_requirements


KEYS = config.CHANNEL_KEYS + config.HARDWARE_KEYS + ('n', 'm', 'slots', 'output', 'format')
REQUIRED = config.HARDWARE_REQUIRED + ('length_km', 'n', 'm')


def parser_config(p):
    """Compute the latency, coherence time and memory register size."""
    config.add_arguments(p, KEYS)
    return on_cmd


def resource_fields(cfg):
    cfg.require(*REQUIRED)
    ch, hw, rc = cfg.channel, cfg.hardware, cfg.repeater()
    res = resource_requirements(ch, hw, rc)
    fields = [
        ('t_latency_s', res.t_latency_s, 's'),
        ('t1_s', res.t1_s, 's'),
        ('t2_s', res.t2_s, 's'),
        ('j_slots', res.j_slots, None),
        ('t_coherence_min_s', res.t_coherence_min_s, 's'),
        ('n_mem_min', res.n_mem_min, None),
        ('occupancy_at_meas', res.occupancy_at_meas, None),
    ]
    slots = cfg['slots']
    if slots is not None:
        if slots < 1:
            raise ConfigError(f'slots must be >= 1, got {slots}', key='slots')
        occupancy = [int(x) for x in register_occupancy(ch, hw, rc, slots)]
        if cfg.format == 'json':
            fields.append(('occupancy', occupancy, None))
        else:
            fields.append(('occupancy', ' '.join(str(x) for x in occupancy), None))
    return fields


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    write_fields(cfg, resource_fields(cfg))
    return 0
