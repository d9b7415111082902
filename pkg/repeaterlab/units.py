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
Manage units, loss conversions and unit display.

Fiber attenuation is quoted in dB/km while the rate formulas use the
natural attenuation coefficient, so every public interface accepts dB and
converts exactly once through :func:`to_natural_loss`.
"""

import math
import re


RE_IS_NUMBER = re.compile(r'^\s*([-+]?(?:[0-9]*\.?[0-9]+)(?:[eE][-+]?[0-9]+)?)\s*(.*)')

_UNIT_PREFIX = [
    (1e24, 'Y'),
    (1e21, 'Z'),
    (1e18, 'E'),
    (1e15, 'P'),
    (1e12, 'T'),
    (1e9, 'G'),
    (1e6, 'M'),
    (1e3, 'k'),
    (1e0,  ''),
    (1e-3, 'm'),
    (1e-6, 'µ'),
    (1e-9, 'n'),
    (1e-12, 'p'),
    (1e-15, 'f'),
    (1e-18, 'a'),
    (1e-21, 'z'),
    (1e-24, 'y'),
]

_PREFIX_MAP = dict([(p, v) for v, p in _UNIT_PREFIX])
_PREFIX_MAP['u'] = 1e-6  # common "misuse" of µ

DB_PER_NEPER_POWER = 10.0 / math.log(10.0)
"""Attenuation in dB/km that corresponds to 1 /km natural attenuation."""


def to_natural_loss(alpha_db):
    """Convert fiber attenuation to the natural exponent coefficient.

    :param alpha_db: The attenuation in dB/km.
    :return: The natural attenuation alpha in 1/km, so that the channel
        transmissivity over L km is exp(-alpha * L).
    :raise ValueError: If alpha_db is not positive.
    """
    alpha_db = float(alpha_db)
    if not alpha_db > 0.0:
        raise ValueError(f'alpha_db must be positive, got {alpha_db!r}')
    return alpha_db / DB_PER_NEPER_POWER


def db_to_transmissivity(db):
    """Convert an element loss in dB to its transmissivity.

    :param db: The loss in dB, which must be >= 0.
    :return: The transmissivity 10**(-db/10) in (0, 1].
    """
    db = float(db)
    if not db >= 0.0 or math.isinf(db):
        raise ValueError(f'loss in dB must be finite and >= 0, got {db!r}')
    return 10.0 ** (-db / 10.0)


def transmissivity_to_db(value):
    """Convert a transmissivity to its loss in dB.

    :param value: The transmissivity in (0, 1].
    :return: The loss 10*log10(1/value) in dB.
    """
    value = float(value)
    if not 0.0 < value <= 1.0:
        raise ValueError(f'transmissivity must be in (0, 1], got {value!r}')
    return -10.0 * math.log10(value)


def unit_prefix(value):
    """Get the unit prefix and adjust value.

    :param value: The value to convert to a power of 1000.
    :return: The tuple of (adjusted_value, prefix, scale)
        where value = scale * adjust_value
        Scale is always a power of 10 (10**k).
    """
    v = abs(value)
    if not math.isfinite(v):
        return value, '', 1
    for k, c in _UNIT_PREFIX:
        if v >= k:
            return value / k, c, k
    return 0.0, '', 1  # close enough to zero


def three_sig_figs(x, units=None, space1=None, space2=None):
    """Get the value x displayed to three significant figures.

    :param x: The value to convert to a string.
    :param units: The units for x.
    :param space1: The space to insert between the number and prefix.
        If None and units are provided, insert a single space, ' '.
        If None and units are not provide, insert nothing, ''.
    :param space2: The space to insert between the prefix and units.
        If None, insert nothing, ''.
    :return: The string formatted as 'value units'
    """
    units = '' if units is None else units
    if space1 is None:
        space1 = ' ' if len(units) else ''
    space2 = '' if space2 is None else space2
    if not math.isfinite(x):
        return '%s%s%s' % (x, space1, units)
    x, prefix, _ = unit_prefix(x)
    z = abs(x)
    if z >= 100:
        s = '%.0f' % z
    elif z >= 10:
        s = '%.1f' % z
    elif z >= 1:
        s = '%.2f' % z
    else:
        s = '%.3f' % z
    if x < 0:
        s = '-' + s
    return '%s%s%s%s%s' % (s, space1, prefix, space2, units)


def str_to_number(s):
    """Convert a string with an optional SI prefix to a number.

    :param s: The string such as '50n', '1.5k' or '2e5'.  Non-string
        numbers are returned unchanged.
    :return: The int or float value.
    :raise ValueError: If s does not start with a number.
    """
    if s is None:
        return s
    if not isinstance(s, str):
        float(s)
        return s
    match = RE_IS_NUMBER.match(s)
    if not match:
        raise ValueError(f'not a number: {s}')
    number = match.group(1)
    units = match.group(2)
    if '.' in number or 'e' in number.lower():
        number = float(number)
    else:
        number = int(number)
    if len(units):
        v = _PREFIX_MAP.get(units[0])
        if v is None:
            raise ValueError(f'unknown unit prefix in {s!r}')
        if v >= 1:
            v = int(v)
        number *= v
    return number
