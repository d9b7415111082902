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
Define the configuration keys available to the application.

The JSON configuration file uses a flat namespace of these keys and
every key has a matching command-line flag.
"""

from .parameter import Parameter
from .model import MODEL_IDEAL, MODEL_SWITCH_LOSS, MODEL_WORST_DECOHERENCE, C_FIBER_KM_PER_S
from .simulation import PROTOCOL_FIRST_SUCCESS, PROTOCOL_LEAST_WAIT


# Parameter(name, kind, default, [(value_name, value, [aliases]), ...], units, brief)
# * default is None when the key has no default
# * for 'choice' parameters the default is the value name

PARAMETERS = [
    Parameter('alpha_db', 'float', units='dB/km', brief='Fiber attenuation.'),
    Parameter('length_km', 'float', units='km', brief='End-to-end length L.'),
    Parameter('c_fib', 'float', C_FIBER_KM_PER_S, units='km/s', brief='Signal speed in fiber.'),
    Parameter('tau_ns', 'float', units='ns', brief='Source repetition period.'),
    Parameter('channels', 'int', 1, brief='Parallel channels M per link.'),
    Parameter('mu', 'float', brief='Linear-optical BSM success probability.'),
    Parameter('detector_eff', 'float', brief='Detector efficiency, mu = detector_eff**2 / 2.'),
    Parameter('q', 'float', brief='Memory swap success probability.'),
    Parameter('lambda_t', 'float', 1.0, brief='Switch transmissivity.'),
    Parameter('lambda_t_db', 'float', units='dB', brief='Switch loss, replaces lambda_t.'),
    Parameter('lambda_mem', 'float', 1.0, brief='Memory survival probability per slot.'),
    Parameter(
        'model',
        'choice',
        'ideal',
        [
            ('ideal',                          MODEL_IDEAL),
            ('switch_loss',                    MODEL_SWITCH_LOSS, ['switch', 'switch-loss']),
            ('switch_plus_worst_decoherence',  MODEL_WORST_DECOHERENCE, ['worst', 'worst-decoherence']),
        ],
        brief='Loss model for the swap probability.',
    ),
    Parameter('n', 'int', brief='Number of repeater stations.'),
    Parameter('m', 'int', brief='Time-multiplexing block length.'),
    Parameter('sweep_start', 'float', units='km', brief='First sweep length.'),
    Parameter('sweep_stop', 'float', units='km', brief='Last sweep length (inclusive).'),
    Parameter('sweep_step', 'float', units='km', brief='Sweep step.'),
    Parameter('lengths', 'float_list', units='km', brief='Explicit sweep lengths, replaces start/stop/step.'),
    Parameter('n_max', 'int', brief='Repeater count search cap.'),
    Parameter('m_max', 'int', brief='Block length search cap.'),
    Parameter(
        'search',
        'choice',
        'bisect',
        [
            ('bisect', 'bisect'),
            ('grid', 'grid', ['exhaustive']),
        ],
        brief='Envelope search mode.',
    ),
    Parameter('seed', 'int', 0, brief='Monte Carlo seed.'),
    Parameter('trials', 'int', 100000, brief='Monte Carlo trials.'),
    Parameter('workers', 'int', brief='Worker threads, default CPU count.'),
    Parameter(
        'protocol',
        'choice',
        'first_success',
        [
            ('first_success',            PROTOCOL_FIRST_SUCCESS, ['first-success', '1']),
            ('least_wait_end_of_block',  PROTOCOL_LEAST_WAIT, ['least-wait', 'least_wait', '2']),
        ],
        brief='Memory swap scheduling protocol.',
    ),
    Parameter('slots', 'int', brief='Register occupancy slots to report.'),
    Parameter('output', 'str', brief='Output path, stdout when omitted.'),
    Parameter(
        'format',
        'choice',
        None,
        [
            ('csv', 'csv'),
            ('json', 'json'),
        ],
        brief='Output format, default from the output extension.',
    ),
    Parameter('per_mode', 'bool', False, brief='Report rates in ebits/mode.'),
    Parameter('literal_log2_reading', 'bool', False,
              brief='Read the decoherence switch term as log2(2)*lambda_t.'),
    Parameter('crossover', 'bool', False, brief='Also report the PLOB crossover distance.'),
    Parameter('crossover_start', 'float', 1.0, units='km', brief='Crossover search start.'),
    Parameter('crossover_stop', 'float', 1000.0, units='km', brief='Crossover search stop.'),
]


PARAMETERS_DICT = dict((p.name, p) for p in PARAMETERS)


def name_to_param(name):
    return PARAMETERS_DICT[name]
