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

"""
Load and validate run configurations.

Values resolve in order of precedence: command-line flags, then the JSON
configuration file, then the parameter defaults.
"""

from dataclasses import dataclass, field
import json
import logging
import math
import os

from repeaterlab.model import ChannelParams, HardwareParams, RepeaterConfig
from repeaterlab.parameters_v1 import PARAMETERS, PARAMETERS_DICT
from repeaterlab.simulation import SimConfig
from repeaterlab.units import db_to_transmissivity


log = logging.getLogger(__name__)

SWEEP_KEYS = ('sweep_start', 'sweep_stop', 'sweep_step')
CHANNEL_KEYS = ('alpha_db', 'length_km', 'c_fib')
HARDWARE_KEYS = ('tau_ns', 'channels', 'mu', 'detector_eff', 'q', 'lambda_t', 'lambda_t_db',
                 'lambda_mem')
HARDWARE_REQUIRED = ('alpha_db', 'tau_ns', 'mu', 'q')


class ConfigError(ValueError):
    """Invalid configuration.

    :param message: The description.
    :param key: The offending key, if any.
    """

    def __init__(self, message, key=None):
        self.key = key
        super().__init__(message)


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run configuration.

    :param values: The dict of every key to its typed value (None when unset).
    :param explicit: The keys set by the file or by flags.
    :param channel: The :class:`ChannelParams`, None without alpha_db.
    :param hardware: The :class:`HardwareParams`, None without tau_ns.
    :param lengths: The sweep lengths in km, empty without a sweep.
    :param sim: The :class:`SimConfig`.
    """
    values: dict
    explicit: frozenset = frozenset()
    channel: ChannelParams = None
    hardware: HardwareParams = None
    lengths: tuple = ()
    sim: SimConfig = field(default_factory=SimConfig)

    def __getitem__(self, key):
        return self.values[key]

    @property
    def model(self):
        return self.values['model']

    @property
    def output(self):
        return self.values['output']

    @property
    def format(self):
        return self.values['format']

    def repeater(self):
        """Get the :class:`RepeaterConfig` from n and m."""
        self.require('n', 'm')
        try:
            return RepeaterConfig(self.values['n'], self.values['m'])
        except ValueError as ex:
            raise ConfigError(str(ex))

    def require(self, *keys):
        """Require keys to have values.

        :raise ConfigError: Listing every missing key.
        """
        missing = [k for k in keys if self.values.get(k) is None]
        if 'mu' in missing and self.values.get('detector_eff') is not None:
            missing.remove('mu')
        if missing:
            flags = ', '.join(PARAMETERS_DICT[k].flag for k in missing)
            raise ConfigError(f'missing required value: {flags}', key=missing[0])
        return self


def sweep_lengths(start, stop, step):
    """Compute the inclusive sweep start, start + step, ..., stop.

    :raise ConfigError: If the sweep is empty.
    """
    if step is None or not step > 0.0 or stop < start:
        raise ConfigError(f'empty sweep: start={start!r} stop={stop!r} step={step!r}')
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(start + k * step for k in range(count))


def parse_values(raw, source):
    """Type check a dict of raw values.

    :param raw: The dict of key to value.
    :param source: The description of where raw came from.
    :return: The dict of key to typed value.
    :raise ConfigError: On an unknown key or a type mismatch.
    """
    values = {}
    for key, value in raw.items():
        p = PARAMETERS_DICT.get(key)
        if p is None:
            raise ConfigError(f'{source}: unknown key {key!r}', key=key)
        try:
            values[key] = p.parse(value)
        except ValueError as ex:
            raise ConfigError(f'{source}: {ex}', key=key)
    return values


def read_config_file(path):
    """Read the raw key/value dict of a JSON configuration file.

    :raise OSError: If the file cannot be read.
    :raise ConfigError: If the contents are not a JSON object.
    """
    with open(path, 'rt', encoding='utf-8') as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as ex:
            raise ConfigError(f'{path}: invalid JSON: {ex}')
    if not isinstance(raw, dict):
        raise ConfigError(f'{path}: expected a JSON object')
    return raw


def build_config(file_values=None, flag_values=None):
    """Merge typed values and construct the validated :class:`RunConfig`.

    :param file_values: The typed values from the configuration file.
    :param flag_values: The typed values from command-line flags, which
        take precedence.
    :raise ConfigError: On any invalid combination.
    """
    values = dict((p.name, p.default_value) for p in PARAMETERS)
    explicit = set()
    for src in (file_values, flag_values):
        for key, value in (src or {}).items():
            if value is not None:
                values[key] = value
                explicit.add(key)

    if values['lambda_t_db'] is not None:
        try:
            lambda_t = db_to_transmissivity(values['lambda_t_db'])
        except ValueError as ex:
            raise ConfigError(f'lambda_t_db: {ex}', key='lambda_t_db')
        if 'lambda_t' in explicit and abs(values['lambda_t'] - lambda_t) > 1e-12 * lambda_t:
            raise ConfigError('lambda_t and lambda_t_db disagree', key='lambda_t')
        values['lambda_t'] = lambda_t

    if values['format'] is None:
        output = values['output'] or ''
        values['format'] = 'json' if output.lower().endswith('.json') else 'csv'

    try:
        channel = None
        if values['alpha_db'] is not None:
            length = values['length_km'] if values['length_km'] is not None else 0.0
            channel = ChannelParams(values['alpha_db'], length, values['c_fib'])
        hardware = None
        if values['tau_ns'] is not None and values['q'] is not None and \
                (values['mu'] is not None or values['detector_eff'] is not None):
            hardware = HardwareParams(
                tau_s=values['tau_ns'] / 1e9,
                channels=values['channels'],
                mu=values['mu'],
                q=values['q'],
                lambda_t=values['lambda_t'],
                lambda_mem=values['lambda_mem'],
                detector_eff=values['detector_eff'])
        sim = SimConfig(seed=values['seed'], trials=values['trials'], workers=values['workers'])
    except ValueError as ex:
        raise ConfigError(str(ex))

    if values['lengths'] is not None:
        lengths = tuple(values['lengths'])
        if not lengths:
            raise ConfigError('empty sweep: lengths is empty', key='lengths')
        if any(x < 0 for x in lengths):
            raise ConfigError('sweep lengths must be >= 0', key='lengths')
    elif any(values[k] is not None for k in SWEEP_KEYS):
        if any(values[k] is None for k in SWEEP_KEYS):
            raise ConfigError('sweep requires sweep_start, sweep_stop and sweep_step')
        lengths = sweep_lengths(*(values[k] for k in SWEEP_KEYS))
        if lengths[0] < 0:
            raise ConfigError('sweep lengths must be >= 0', key='sweep_start')
    else:
        lengths = ()

    return RunConfig(values=values, explicit=frozenset(explicit), channel=channel,
                     hardware=hardware, lengths=lengths, sim=sim)


def load_config(path, overrides=None):
    """Load a JSON configuration file.

    :param path: The path to the JSON file with a flat object of keys.
    :param overrides: The optional dict of raw values, such as flag
        values, that take precedence over the file.
    :return: The validated :class:`RunConfig`.
    :raise ConfigError: On an unknown key, a type mismatch or an invalid
        combination.
    :raise OSError: If the file cannot be read.
    """
    file_values = parse_values(read_config_file(path), os.path.basename(path))
    flag_values = parse_values(overrides or {}, 'flags')
    return build_config(file_values, flag_values)


def add_arguments(parser, keys):
    """Add the config file option and the flags for keys to an argparse parser."""
    parser.add_argument('--config',
                        help='JSON configuration file.  Flags override its values.')
    for key in keys:
        p = PARAMETERS_DICT[key]
        text = p.brief or ''
        if p.units:
            text += f' ({p.units})'
        if p.kind == 'bool':
            parser.add_argument(p.flag, dest=key, action='store_const', const=True,
                                default=None, help=text)
            continue
        if p.kind == 'choice':
            text += ' One of: ' + ', '.join(x[0] for x in p.values) + '.'
        if p.default is not None:
            text += f' Default {p.default}.'
        parser.add_argument(p.flag, dest=key, default=None, help=text)


def config_from_args(args, keys):
    """Build the :class:`RunConfig` from parsed arguments.

    :param args: The argparse namespace.
    :param keys: The config keys that have flags.
    """
    raw = dict((k, getattr(args, k, None)) for k in keys)
    raw = dict((k, v) for k, v in raw.items() if v is not None)
    path = getattr(args, 'config', None)
    if path:
        return load_config(path, raw)
    return build_config(None, parse_values(raw, 'flags'))
