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

import logging
from repeaterlab import config, report
from repeaterlab.file_replace import write_text
from repeaterlab.model import effective_swap_prob, end_to_end_rate, link_success_prob, \
    plob_rate, rate_per_mode, resource_requirements


KEYS = config.CHANNEL_KEYS + config.HARDWARE_KEYS + ('model', 'n', 'm', 'per_mode', 'output', 'format')
REQUIRED = ('alpha_db', 'length_km', 'tau_ns', 'mu', 'q', 'n', 'm')
log = logging.getLogger(__name__)


def parser_config(p):
    """Compute the end-to-end rate of one repeater configuration."""
    config.add_arguments(p, KEYS)
    return on_cmd


def rate_fields(cfg):
    """Compute the (name, value, units) fields reported by this command."""
    cfg.require(*REQUIRED)
    ch, hw, rc = cfg.channel, cfg.hardware, cfg.repeater()
    probs = link_success_prob(ch, hw, rc)
    rate = end_to_end_rate(ch, hw, rc, cfg.model)
    plob = plob_rate(ch, hw)
    units = 'ebit/s'
    if cfg['per_mode']:
        rate, plob, units = rate_per_mode(rate, hw), rate_per_mode(plob, hw), 'ebit/mode'
    res = resource_requirements(ch, hw, rc)
    log.debug('rate %r at L=%g km, n=%d, m=%d', rate, ch.length_km, rc.n, rc.m)
    return [
        ('model', cfg.model, None),
        ('rate', rate, units),
        ('plob', plob, units),
        ('lambda_half', probs.lambda_half, None),
        ('p_attempt', probs.p_attempt, None),
        ('p_link', probs.p_link, None),
        ('q_eff', effective_swap_prob(hw, rc.m, cfg.model), None),
        ('t_latency_s', res.t_latency_s, 's'),
        ('t1_s', res.t1_s, 's'),
        ('t2_s', res.t2_s, 's'),
        ('j_slots', res.j_slots, None),
        ('t_coherence_min_s', res.t_coherence_min_s, 's'),
        ('n_mem_min', res.n_mem_min, None),
        ('occupancy_at_meas', res.occupancy_at_meas, None),
    ]


def write_fields(cfg, fields):
    """Write fields as JSON when the format is json, otherwise as text lines."""
    if cfg.format == 'json':
        doc = dict((name, value) for name, value, _ in fields)
        doc['format_version'] = report.REPORT_FORMAT_VERSION
        doc['config'] = report.report_config(cfg)
        write_text(cfg.output, report.to_json(doc))
    else:
        write_text(cfg.output, report.fields_text(fields))


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    write_fields(cfg, rate_fields(cfg))
    return 0
