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

import math
from repeaterlab import config
from repeaterlab.bounds import optimal_denominator, optimal_params
from repeaterlab.command.rate import write_fields


NAME = 'optimal-params'
KEYS = config.CHANNEL_KEYS + config.HARDWARE_KEYS + ('output', 'format')
REQUIRED = config.HARDWARE_REQUIRED + ('length_km',)


def parser_config(p):
    """Compute the optimal repeater count and block length at one length."""
    config.add_arguments(p, KEYS)
    return on_cmd


def optimal_fields(cfg):
    cfg.require(*REQUIRED)
    p = optimal_params(cfg.channel, cfg.hardware)
    d = optimal_denominator(cfg.hardware)
    return [
        ('length_km', cfg.channel.length_km, None),
        ('n_star', p.n_star, None),
        ('m_star', p.m_star, None),
        ('n_int', p.n_int, None),
        ('m_int', p.m_int, None),
        ('feasible', p.feasible, None),
        ('denominator', d, None),
        ('c0', math.sqrt((math.log2(cfg.hardware.lambda_t) + 1.0) / d), None),
    ]


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    write_fields(cfg, optimal_fields(cfg))
    return 0
