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
import numpy as np
from repeaterlab import config, report
from repeaterlab.file_replace import write_text
from repeaterlab.model import end_to_end_rate
from repeaterlab.simulation import EmptyStatisticsError, rate_with_protocol_decoherence, \
    simulate_rate, simulate_wait_times


KEYS = config.CHANNEL_KEYS + config.HARDWARE_KEYS + \
    ('model', 'n', 'm', 'seed', 'trials', 'workers', 'protocol', 'output')
REQUIRED = config.HARDWARE_REQUIRED + ('length_km', 'n', 'm')
log = logging.getLogger(__name__)


def parser_config(p):
    """Estimate the rate and the memory wait times by Monte Carlo simulation."""
    config.add_arguments(p, KEYS)
    return on_cmd


def rate_section(cfg):
    ch, hw, rc = cfg.channel, cfg.hardware, cfg.repeater()
    estimate = simulate_rate(ch, hw, rc, cfg.model, cfg.sim)
    analytic = end_to_end_rate(ch, hw, rc, cfg.model)
    return {
        'estimate': estimate.rate,
        'stderr': estimate.stderr,
        'analytic': analytic,
        'z_score': report.z_score(estimate.rate, estimate.stderr, analytic),
        'delivered': estimate.delivered,
        'trials': estimate.trials,
    }


def wait_time_section(cfg, protocol):
    stats = simulate_wait_times(cfg.channel, cfg.hardware, cfg.repeater(), protocol, cfg.sim)
    return {
        'protocol': stats.protocol,
        'mean_y': stats.mean_y,
        'mean_y_stderr': stats.mean_y_stderr,
        'delta1_analytic': stats.delta1_analytic,
        'delta1_truncated': stats.delta1_truncated,
        'mean_x': float(np.mean(stats.x_left)),
        'mean_x_analytic': stats.mean_x_analytic,
        's_mean': stats.s_mean,
        'blocks': stats.blocks,
    }


def protocol_section(cfg, protocol):
    r = rate_with_protocol_decoherence(cfg.channel, cfg.hardware, cfg.repeater(), protocol, cfg.sim)
    return {
        'protocol': protocol,
        'analytic_rate': r.analytic_rate,
        'mc_rate': r.mc_rate,
        'mc_stderr': r.mc_stderr,
        'mean_y': r.mean_y,
    }


def simulate_report(cfg):
    """Run every simulation of the configuration.

    :return: The JSON-serializable report dict.  The wait-time sections
        are None without a repeater or without a successful block.
    """
    cfg.require(*REQUIRED)
    protocol = cfg['protocol']
    doc = {
        'format_version': report.REPORT_FORMAT_VERSION,
        'config': report.report_config(cfg),
        'rate': rate_section(cfg),
        'wait_times': None,
        'protocol_decoherence': None,
    }
    if cfg['n'] < 1:
        log.info('no repeater: wait times skipped')
        return doc
    try:
        doc['wait_times'] = wait_time_section(cfg, protocol)
        doc['protocol_decoherence'] = protocol_section(cfg, protocol)
    except EmptyStatisticsError as ex:
        log.warning('wait times skipped: %s', ex)
    return doc


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    write_text(cfg.output, report.to_json(simulate_report(cfg)))
    return 0
