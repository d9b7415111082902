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

from repeaterlab.units import str_to_number


KINDS = ['float', 'int', 'bool', 'str', 'float_list', 'choice']

_BOOL_STR = {
    'true': True, '1': True, 'on': True, 'yes': True,
    'false': False, '0': False, 'off': False, 'no': False,
}


class Parameter:
    """Define a single configuration key.

    :param name: The parameter name, which is also the JSON key.  The
        command-line flag replaces '_' with '-', so 'alpha_db' is '--alpha-db'.
    :param kind: The value kind, one of :data:`KINDS`.
    :param default: The default value, or None when unset.  For 'choice'
        parameters, the default is the value name.
    :param values: For 'choice' parameters, the list of acceptable values
        as ('name', value, ['alias1', ...]) tuples.
    :param units: The units string for the parameter.
    :param brief: The one-line help text.
    """
    def __init__(self, name, kind, default=None, values=None, units=None, brief=None):
        self.name = name
        self.kind = kind
        self.default = default
        self.units = units
        self.brief = brief
        self.values = []
        self.str_to_value = {}
        if kind not in KINDS:
            raise ValueError('Parameter %s, invalid kind %r' % (name, kind))
        if values is None:
            if kind == 'choice':
                raise ValueError('Parameter %s, choice requires values' % (name, ))
            return
        for idx, value in enumerate(values):
            if len(value) < 2 or len(value) > 3:
                raise ValueError('Parameter %s, value %d invalid: %r' % (name, idx, value))
            vname = value[0]
            vvalue = value[1]
            if not isinstance(vname, str):
                raise ValueError('Parameter %s, value %d invalid name %r' % (name, idx, vname))
            if len(value) == 2:
                value = (vname, vvalue, [])
            self.values.append(value)
            self._insert(vname, vvalue)
            for alias in value[2]:
                self._insert(alias, vvalue)

        if default is not None and default not in [x[0] for x in self.values]:
            raise ValueError('Parameter %s, default %r not in values' % (name, default))

    def _insert(self, key, value):
        if key in self.str_to_value:
            raise ValueError('Parameter %s: key %s already exists' % (self.name, key))
        self.str_to_value[key] = value

    @property
    def flag(self):
        return '--' + self.name.replace('_', '-')

    @property
    def default_value(self):
        if self.kind == 'choice' and self.default is not None:
            return self.str_to_value[self.default]
        return self.default

    def parse(self, value):
        """Convert a JSON or command-line value.

        :param value: The value, either already typed or a string.
        :return: The typed value.
        :raise ValueError: If value does not match the kind.
        """
        if value is None:
            return None
        kind = self.kind
        if kind == 'choice':
            try:
                return self.str_to_value[str(value)]
            except KeyError:
                names = ', '.join(x[0] for x in self.values)
                raise ValueError(f'{self.name}: invalid value {value!r}, expected one of {names}')
        if kind == 'str':
            if not isinstance(value, str):
                raise ValueError(f'{self.name}: expected a string, got {value!r}')
            return value
        if kind == 'bool':
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.lower() in _BOOL_STR:
                return _BOOL_STR[value.lower()]
            raise ValueError(f'{self.name}: expected a boolean, got {value!r}')
        if kind == 'float_list':
            if isinstance(value, str):
                value = [v for v in value.replace(',', ' ').split() if v]
            if not isinstance(value, (list, tuple)):
                raise ValueError(f'{self.name}: expected a list of numbers, got {value!r}')
            return [self._number(v, float) for v in value]
        return self._number(value, int if kind == 'int' else float)

    def _number(self, value, cls):
        if isinstance(value, bool):
            raise ValueError(f'{self.name}: expected a number, got {value!r}')
        try:
            number = str_to_number(value)
        except (TypeError, ValueError):
            raise ValueError(f'{self.name}: expected a number, got {value!r}')
        if cls is int:
            if isinstance(number, float):
                if not number.is_integer():
                    raise ValueError(f'{self.name}: expected an integer, got {value!r}')
            return int(number)
        return float(number)
