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
Test the configuration loader
"""

import argparse
import json
import os
import tempfile
import unittest
import numpy as np
from repeaterlab import config
from repeaterlab.config import ConfigError, build_config, load_config, parse_values


BASE = {'alpha_db': 0.15, 'tau_ns': 50, 'mu': 0.405, 'q': 0.255, 'channels': 50}


class TestConfig(unittest.TestCase):

    def setUp(self):
        self._dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self._dir.cleanup()

    def write(self, obj, name='config.json'):
        path = os.path.join(self._dir.name, name)
        with open(path, 'wt', encoding='utf-8') as f:
            if isinstance(obj, str):
                f.write(obj)
            else:
                json.dump(obj, f)
        return path

    def test_defaults(self):
        cfg = build_config()
        self.assertIsNone(cfg.channel)
        self.assertIsNone(cfg.hardware)
        self.assertEqual((), cfg.lengths)
        self.assertEqual('ideal', cfg.model)
        self.assertEqual('csv', cfg.format)
        self.assertEqual(0, cfg.sim.seed)
        self.assertEqual(frozenset(), cfg.explicit)

    def test_load(self):
        cfg = load_config(self.write(dict(BASE, length_km=400)))
        self.assertEqual(400.0, cfg.channel.length_km)
        self.assertEqual(50, cfg.hardware.channels)
        np.testing.assert_allclose(50e-9, cfg.hardware.tau_s, rtol=1e-15)
        self.assertEqual(0.405, cfg['mu'])
        self.assertIn('alpha_db', cfg.explicit)
        self.assertNotIn('lambda_t', cfg.explicit)

    def test_flags_override_file(self):
        path = self.write(dict(BASE, length_km=400, model='switch_loss'))
        cfg = load_config(path, {'length_km': '100', 'channels': '1', 'tau_ns': '40'})
        self.assertEqual(100.0, cfg.channel.length_km)
        self.assertEqual(1, cfg.hardware.channels)
        np.testing.assert_allclose(40e-9, cfg.hardware.tau_s, rtol=1e-15)
        self.assertEqual('switch_loss', cfg.model)

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as cm:
            load_config(self.write(dict(BASE, repeaters=4)))
        self.assertEqual('repeaters', cm.exception.key)

    def test_type_mismatch(self):
        with self.assertRaises(ConfigError) as cm:
            load_config(self.write(dict(BASE, n='high')))
        self.assertEqual('n', cm.exception.key)
        with self.assertRaises(ConfigError):
            parse_values({'m': 2.5}, 'flags')

    def test_invalid_json(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('{"alpha_db": '))
        with self.assertRaises(ConfigError):
            load_config(self.write('[1, 2]'))

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_config(os.path.join(self._dir.name, 'missing.json'))

    def test_invalid_values(self):
        for key, value in [('q', 1.5), ('mu', -0.1), ('channels', 0), ('lambda_t', 0.0), ('trials', 0)]:
            with self.assertRaises(ConfigError, msg=key):
                build_config(dict(BASE, length_km=100.0, **{key: value}))

    def test_lambda_t_db(self):
        cfg = build_config(dict(BASE, lambda_t_db=2.0))
        np.testing.assert_allclose(10 ** -0.2, cfg.hardware.lambda_t, rtol=1e-12)
        cfg = build_config(dict(BASE, lambda_t_db=0.0, lambda_t=1.0))
        self.assertEqual(1.0, cfg.hardware.lambda_t)
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, lambda_t_db=2.0, lambda_t=0.9))
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, lambda_t_db=-1.0))

    def test_detector_eff(self):
        d = dict(BASE)
        del d['mu']
        cfg = build_config(dict(d, detector_eff=0.9, length_km=10.0))
        np.testing.assert_allclose(0.405, cfg.hardware.mu, rtol=1e-12)
        cfg.require('mu', 'length_km')

    def test_require(self):
        cfg = build_config(dict(BASE))
        cfg.require('alpha_db', 'tau_ns')
        with self.assertRaises(ConfigError) as cm:
            cfg.require('n', 'm')
        self.assertIn('--n', str(cm.exception))
        self.assertIn('--m', str(cm.exception))
        self.assertEqual('n', cm.exception.key)
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, n=-1, m=10)).repeater()
        rc = build_config(dict(BASE, n=4, m=10)).repeater()
        self.assertEqual((4, 10), (rc.n, rc.m))

    def test_sweep(self):
        cfg = build_config(dict(BASE, sweep_start=50, sweep_stop=500, sweep_step=10))
        self.assertEqual(46, len(cfg.lengths))
        self.assertEqual(50.0, cfg.lengths[0])
        self.assertEqual(500.0, cfg.lengths[-1])
        cfg = build_config(dict(BASE, sweep_start=0.1, sweep_stop=0.3, sweep_step=0.1))
        self.assertEqual(3, len(cfg.lengths))
        cfg = build_config(dict(BASE, lengths=[100.0, 400.0]))
        self.assertEqual((100.0, 400.0), cfg.lengths)

    def test_sweep_errors(self):
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, sweep_start=500, sweep_stop=50, sweep_step=10))
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, sweep_start=50, sweep_stop=500, sweep_step=0))
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, sweep_start=50, sweep_stop=500))
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, lengths=[]))
        with self.assertRaises(ConfigError):
            build_config(dict(BASE, lengths=[-5.0]))

    def test_format_inference(self):
        self.assertEqual('json', build_config({'output': 'out.JSON'}).format)
        self.assertEqual('csv', build_config({'output': 'out.csv'}).format)
        self.assertEqual('csv', build_config({'output': 'out.json', 'format': 'csv'}).format)

    def test_args(self):
        parser = argparse.ArgumentParser()
        keys = config.CHANNEL_KEYS + config.HARDWARE_KEYS + ('n', 'm', 'per_mode')
        config.add_arguments(parser, keys)
        args = parser.parse_args(['--alpha-db', '0.15', '--length-km', '100', '--tau-ns', '50',
                                  '--mu', '0.405', '--q', '0.255', '--n', '4', '--m', '10',
                                  '--per-mode'])
        cfg = config.config_from_args(args, keys)
        self.assertEqual(4, cfg['n'])
        self.assertTrue(cfg['per_mode'])
        np.testing.assert_allclose(50e-9, cfg.hardware.tau_s, rtol=1e-12)

    def test_args_with_file(self):
        parser = argparse.ArgumentParser()
        keys = config.CHANNEL_KEYS + config.HARDWARE_KEYS
        config.add_arguments(parser, keys)
        args = parser.parse_args(['--config', self.write(dict(BASE, length_km=400)), '--length-km', '250'])
        cfg = config.config_from_args(args, keys)
        self.assertEqual(250.0, cfg.channel.length_km)
        self.assertEqual(0.255, cfg.hardware.q)
