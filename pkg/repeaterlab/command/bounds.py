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
from repeaterlab import bounds, config
from repeaterlab.command.envelope import CROSSOVER_KEYS, crossover
from repeaterlab.command.rate import write_fields
from repeaterlab.model import plob_rate, rate_per_mode
from repeaterlab.rootfind import RootNotFoundError


KEYS = config.CHANNEL_KEYS + config.HARDWARE_KEYS + \
    ('model', 'n_max', 'm_max', 'workers', 'per_mode', 'literal_log2_reading') + \
    CROSSOVER_KEYS + ('output', 'format')
REQUIRED = config.HARDWARE_REQUIRED + ('length_km',)
log = logging.getLogger(__name__)


def _attempt(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (bounds.BoundInapplicableError, RootNotFoundError) as ex:
        log.info('%s: %s', fn.__name__, ex)
        return None


def parser_config(p):
    """Evaluate every analytic rate bound at one length."""
    config.add_arguments(p, KEYS)
    return on_cmd


def bound_fields(cfg):
    """Compute the (name, value, units) fields reported by this command.

    Bounds that do not apply to the hardware are reported as None.
    """
    cfg.require(*REQUIRED)
    ch, hw = cfg.channel, cfg.hardware
    units = 'ebit/mode' if cfg['per_mode'] else 'ebit/s'

    def rate(value):
        if value is None or not cfg['per_mode']:
            return value
        return rate_per_mode(value, hw)

    lossy = _attempt(bounds.lossy_lower_bound, ch, hw)
    decoh = _attempt(bounds.decoherence_lower_bound, ch, hw,
                     literal_log2_reading=cfg['literal_log2_reading'])
    opt = _attempt(bounds.optimal_params, ch, hw)
    spatial = _attempt(bounds.spatial_exponent_exact, hw)
    fields = [
        ('length_km', ch.length_km, None),
        ('alpha_l', ch.alpha_l, None),
        ('ub', rate(_attempt(bounds.subexp_upper_bound, ch, hw)), units),
        ('lb', rate(_attempt(bounds.subexp_lower_bound, ch, hw)), units),
        ('ub_coefficient', bounds.upper_coefficient(hw.q) if hw.q > 0 else None, None),
        ('lb_coefficient', bounds.lower_coefficient(hw.q) if hw.q > 0 else None, None),
        ('lossy_lb', rate(lossy[0]) if lossy else None, units),
        ('c_exp', lossy[1].c_exp if lossy else None, None),
        ('c_sub', lossy[1].c_sub if lossy else None, None),
        ('regime', _attempt(bounds.lossy_regime, ch, hw), None),
        ('decoh_lb', rate(decoh.rate_lb) if decoh else None, units),
        ('v0', decoh.v0 if decoh else None, None),
        ('n_star', opt.n_star if opt else None, None),
        ('m_star', opt.m_star if opt else None, None),
        ('n_int', opt.n_int if opt else None, None),
        ('m_int', opt.m_int if opt else None, None),
        ('feasible', opt.feasible if opt else False, None),
        ('s_exact', spatial.s_exact if spatial else None, None),
        ('z_root', spatial.z_root if spatial else None, None),
        ('u_ub', spatial.u_ub if spatial else None, None),
        ('spatial_rate', rate(_attempt(bounds.spatial_only_rate, ch, hw)), units),
        ('spatial_ub', rate(_attempt(bounds.spatial_only_upper_bound, ch, hw)), units),
        ('plob', rate(plob_rate(ch, hw)), units),
    ]
    if cfg['crossover']:
        x = crossover(cfg)
        fields.append(('crossover_km', x, None))
        if x is None:
            log.info('no PLOB crossover in [%g, %g] km', cfg['crossover_start'], cfg['crossover_stop'])
    return fields


def on_cmd(args):
    cfg = config.config_from_args(args, KEYS)
    write_fields(cfg, bound_fields(cfg))
    return 0
