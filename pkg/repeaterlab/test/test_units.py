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
Test the unit conversions and display
"""

import math
import unittest
from repeaterlab import units
import numpy as np


class TestUnits(unittest.TestCase):

    def assertClose(self, expected, actual):
        np.testing.assert_almost_equal(expected[0], actual[0])
        self.assertEqual(expected[1], actual[1])
        np.testing.assert_almost_equal(expected[2], actual[2])

    def test_no_change(self):
        self.assertClose((0.0, '', 1), units.unit_prefix(0.0))
        self.assertClose((1.0, '', 1), units.unit_prefix(1.0))
        self.assertClose((5.0, '', 1), units.unit_prefix(5.0))

    def test_scaled(self):
        self.assertClose((10.0, 'k', 1e3), units.unit_prefix(10e3))
        self.assertClose((100.0, 'µ', 0.000001), units.unit_prefix(0.0001))
        self.assertClose((50.0, 'n', 1e-9), units.unit_prefix(50e-9))

    def test_non_finite(self):
        v, prefix, scale = units.unit_prefix(math.inf)
        self.assertEqual(math.inf, v)
        self.assertEqual('', prefix)
        self.assertEqual('inf ebit/s', units.three_sig_figs(math.inf, 'ebit/s'))

    def test_three_sig_figs_with_units(self):
        self.assertEqual('4.90 kebit/s', units.three_sig_figs(4898.7, 'ebit/s'))
        self.assertEqual('100 µs', units.three_sig_figs(100.4e-6, 's'))
        self.assertEqual('50.0 ns', units.three_sig_figs(50e-9, 's'))
        self.assertEqual('-1.50 ms', units.three_sig_figs(-0.0015, 's'))

    def test_convert_number(self):
        self.assertEqual(1, units.str_to_number('1'))
        self.assertEqual(-1, units.str_to_number('-1'))
        self.assertEqual(1000, units.str_to_number('1k'))
        self.assertEqual(1000, units.str_to_number('1 km'))
        self.assertEqual(1e-6, units.str_to_number('1u'))
        self.assertEqual(2e5, units.str_to_number('2e5'))
        self.assertEqual(0.15, units.str_to_number('0.15'))
        self.assertEqual(7, units.str_to_number(7))

    def test_convert_number_invalid(self):
        with self.assertRaises(ValueError):
            units.str_to_number('high')
        with self.assertRaises(ValueError):
            units.str_to_number('1 x')

    def test_natural_loss(self):
        alpha = units.to_natural_loss(0.15)
        np.testing.assert_allclose(0.15 * math.log(10) / 10, alpha, rtol=1e-15)
        np.testing.assert_allclose(1.0, units.to_natural_loss(units.DB_PER_NEPER_POWER), rtol=1e-15)
        for value in [0.0, -0.2]:
            with self.assertRaises(ValueError):
                units.to_natural_loss(value)

    def test_transmissivity(self):
        self.assertEqual(1.0, units.db_to_transmissivity(0.0))
        np.testing.assert_allclose(10 ** -0.2, units.db_to_transmissivity(2.0), rtol=1e-15)
        np.testing.assert_allclose(0.5, units.db_to_transmissivity(units.transmissivity_to_db(0.5)),
                                   rtol=1e-14)
        self.assertEqual(0.0, units.transmissivity_to_db(1.0))
        with self.assertRaises(ValueError):
            units.db_to_transmissivity(-1.0)
        with self.assertRaises(ValueError):
            units.transmissivity_to_db(0.0)
        with self.assertRaises(ValueError):
            units.transmissivity_to_db(1.5)
