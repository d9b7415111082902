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
from repeaterlab.bounds import bound_summary
from repeaterlab.config import ConfigError
from repeaterlab.envelope import SearchCaps, crossover_distance, envelope_sweep
from repeaterlab.workers import map_ordered


SWEEP_KEYS = config.SWEEP_KEYS + ('lengths', 'n_max', 'm_max', 'search', 'workers')
CROSSOVER_KEYS = ('crossover', 'crossover_start', 'crossover_stop')
KEYS = ('alpha_db', 'c_fib') + config.HARDWARE_KEYS + ('model',) + SWEEP_KEYS + \
    ('per_mode', 'literal_log2_reading') + CROSSOVER_KEYS + ('output', 'format')
REQUIRED = config.HARDWARE_REQUIRED
log = logging.getLogger(__name__)


def parser_config(p):
    """Sweep the length and write the optimized rate, every bound and PLOB."""
    config.add_arguments(p, KEYS)
    return on_cmd


def search_caps(cfg):
    return SearchCaps(n_max=cfg['n_max'], m_max=cfg['m_max'])


def crossover(cfg):
    """Compute the PLOB crossover distance of the configuration, or None."""
    return crossover_distance(cfg.channel, cfg.hardware, cfg.model,
                              start_km=cfg['crossover_start'], stop_km=cfg['crossover_stop'],
                              caps=search_caps(cfg), workers=cfg.sim.workers)


def sweep_records(cfg):
    """Compute one :class:`repeaterlab.report.SweepRecord` per sweep length.

    :raise ConfigError: If the sweep is empty.
    """
    cfg.require(*REQUIRED)
    if not cfg.lengths:
        raise ConfigError('empty sweep: set sweep_start, sweep_stop and sweep_step or lengths')
    ch, hw = cfg.channel, cfg.hardware
    log.info('sweep %d lengths from %g to %g km', len(cfg.lengths), cfg.lengths[0], cfg.lengths[-1])
    points = envelope_sweep(ch, hw, cfg.lengths, model=cfg.model, caps=search_caps(cfg),
                            search=cfg['search'], workers=cfg.sim.workers)
    literal = cfg['literal_log2_reading']
    summaries = map_ordered(lambda x: bound_summary(ch, hw, x, literal_log2_reading=literal),
                            cfg.lengths, cfg.sim.workers)
    records = [report.sweep_record(p, s) for p, s in zip(points, summaries)]
    if cfg['per_mode']:
        records = [r.scaled(hw.modes_per_second) for r in records]
    return records


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    records = sweep_records(cfg)
    extra = {}
    if cfg['crossover']:
        extra['crossover_km'] = crossover(cfg)
        if cfg.format != 'json':
            log.info('crossover_km: %s', extra['crossover_km'])
    report.write_sweep(records, cfg, extra)
    return 0
