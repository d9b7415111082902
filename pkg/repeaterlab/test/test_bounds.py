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
Test the analytic rate bounds
"""

import math
import unittest
import numpy as np
from repeaterlab import bounds
from repeaterlab.bounds import BoundInapplicableError
from repeaterlab.model import ChannelParams, HardwareParams, RepeaterConfig, end_to_end_rate
from repeaterlab.rootfind import RootNotFoundError
from repeaterlab.units import db_to_transmissivity


def hardware(**kwargs):
    d = dict(tau_s=50e-9, channels=50, mu=0.405, q=0.255)
    d.update(kwargs)
    return HardwareParams(**d)


class TestSubexponential(unittest.TestCase):

    def setUp(self):
        self.ch = ChannelParams(0.15, 400.0)
        self.hw = hardware()

    def test_coefficients(self):
        np.testing.assert_allclose(2.337942, bounds.upper_coefficient(0.255), rtol=1e-5)
        np.testing.assert_allclose(2.701975, bounds.lower_coefficient(0.255), rtol=1e-5)

    def test_bound_values(self):
        prefactor = 50 * 0.405 / (0.255 * 50e-9)
        np.testing.assert_allclose(prefactor, bounds.subexp_prefactor(self.hw), rtol=1e-15)
        root = math.sqrt(self.ch.alpha_l)
        ub = bounds.subexp_upper_bound(self.ch, self.hw)
        lb = bounds.subexp_lower_bound(self.ch, self.hw)
        np.testing.assert_allclose(prefactor * math.exp(-2.337942 * root), ub, rtol=1e-5)
        np.testing.assert_allclose(prefactor * math.exp(-2.701975 * root), lb, rtol=1e-5)
        self.assertLess(lb, ub)

    def test_length_override(self):
        a = bounds.subexp_upper_bound(self.ch, self.hw, 250.0)
        b = bounds.subexp_upper_bound(self.ch.with_length(250.0), self.hw)
        self.assertEqual(a, b)
        with self.assertRaises(ValueError):
            bounds.subexp_upper_bound(self.ch, self.hw, -1.0)

    def test_zero_length(self):
        prefactor = bounds.subexp_prefactor(self.hw)
        self.assertEqual(prefactor, bounds.subexp_upper_bound(self.ch, self.hw, 0.0))
        self.assertEqual(prefactor, bounds.subexp_lower_bound(self.ch, self.hw, 0.0))

    def test_inapplicable_hardware(self):
        with self.assertRaises(BoundInapplicableError):
            bounds.subexp_upper_bound(self.ch, hardware(q=0.0))
        with self.assertRaises(BoundInapplicableError):
            bounds.subexp_lower_bound(self.ch, hardware(mu=0.0))

    def test_family_points(self):
        n, m = 2, 7
        x, rate_a = bounds.family_point_A(self.hw, m, n)
        x_b, rate_b = bounds.family_point_Bprime(self.hw, m, n)
        self.assertEqual(x, x_b)
        np.testing.assert_allclose(rate_a * bounds.LOSS_FACTOR ** (n + 1), rate_b, rtol=1e-14)
        ch = ChannelParams(0.15, -math.log(x) / self.ch.alpha)
        rate = end_to_end_rate(ch, self.hw, RepeaterConfig(n, m))
        self.assertLessEqual(rate_b, rate)
        self.assertLessEqual(rate, rate_a)


class TestOptimalParams(unittest.TestCase):

    def test_optimum_at_400_km(self):
        ch = ChannelParams(0.15, 400.0)
        p = bounds.optimal_params(ch, hardware())
        np.testing.assert_allclose(1.751, p.n_star, atol=1e-3)
        np.testing.assert_allclose(7.49, p.m_star, atol=1e-2)
        self.assertEqual(1, p.n_int)
        self.assertEqual(7, p.m_int)
        self.assertTrue(p.feasible)

    def test_forbidden_region(self):
        for length in [0.0, 100.0, 150.0, 200.0]:
            p = bounds.optimal_params(ChannelParams(0.15, length), hardware())
            self.assertFalse(p.feasible, msg=str(length))
            self.assertLess(p.n_star, 1.0)

    def test_inapplicable(self):
        ch = ChannelParams(0.15, 400.0)
        with self.assertRaises(BoundInapplicableError):
            bounds.optimal_params(ch, hardware(channels=1000, lambda_t=0.7))
        with self.assertRaises(BoundInapplicableError):
            bounds.optimal_params(ch, hardware(lambda_t=0.5))

    def test_denominator(self):
        d = bounds.optimal_denominator(hardware())
        np.testing.assert_allclose(-math.log(0.255 * (1 - 1 / math.e)), d, rtol=1e-15)


class TestLossySwitch(unittest.TestCase):

    def test_c_sub_forms_agree(self):
        for db in [0.0, 0.5, 1.0, 2.0, 3.0]:
            for channels in [1, 50, 100]:
                hw = hardware(channels=channels, lambda_t=db_to_transmissivity(db))
                np.testing.assert_allclose(bounds.c_sub_squared_expanded(hw),
                                           bounds.c_sub_squared(hw), rtol=1e-12, atol=1e-14)

    def test_reduces_to_lower_bound(self):
        hw = hardware(lambda_t=1.0)
        ch = ChannelParams(0.15, 0.0)
        for length in np.linspace(25.0, 500.0, 20):
            lossy, consts = bounds.lossy_lower_bound(ch, hw, length)
            lb = bounds.subexp_lower_bound(ch, hw, length)
            np.testing.assert_allclose(lb, lossy, rtol=1e-12)
        self.assertEqual(0.0, consts.c_exp)
        np.testing.assert_allclose(bounds.lower_coefficient(0.255) / 2, consts.c_sub, rtol=1e-15)

    def test_switch_loss_lowers_bound(self):
        ch = ChannelParams(0.15, 300.0)
        r0, _ = bounds.lossy_lower_bound(ch, hardware(channels=1))
        r1, c1 = bounds.lossy_lower_bound(ch, hardware(channels=1, lambda_t=db_to_transmissivity(1.0)))
        self.assertLess(r1, r0)
        self.assertGreater(c1.c_exp, 0.0)

    def test_regime(self):
        hw = hardware(channels=1, lambda_t=db_to_transmissivity(2.0))
        self.assertEqual('subexponential', bounds.lossy_regime(ChannelParams(0.15, 10.0), hw))
        self.assertEqual('exponential', bounds.lossy_regime(ChannelParams(0.15, 1000.0), hw))
        self.assertEqual('subexponential', bounds.lossy_regime(ChannelParams(0.15, 1000.0), hardware()))

    def test_negative_c_sub_squared(self):
        hw = hardware(channels=1, lambda_t=0.1)
        self.assertLess(bounds.c_sub_squared(hw), 0.0)
        with self.assertRaises(BoundInapplicableError):
            bounds.lossy_lower_bound(ChannelParams(0.15, 100.0), hw)


class TestDecoherence(unittest.TestCase):

    def test_reduces_to_lossy_bound(self):
        ch = ChannelParams(0.15, 0.0)
        for db in [0.0, 1.0]:
            hw = hardware(lambda_t=db_to_transmissivity(db))
            for length in np.linspace(50.0, 500.0, 10):
                sol = bounds.decoherence_lower_bound(ch, hw, length)
                lossy, _ = bounds.lossy_lower_bound(ch, hw, length)
                np.testing.assert_allclose(lossy, sol.rate_lb, rtol=1e-9)
                self.assertLess(sol.residual, 1e-10)
                opt = bounds.optimal_params(ch, hw, length)
                np.testing.assert_allclose(opt.n_star + 1.0, sol.v0, rtol=1e-9)

    def test_root_is_repeater_count_without_memory_loss(self):
        ch = ChannelParams(0.15, 0.0)
        for db in [0.0, 1.0]:
            hw = hardware(lambda_t=db_to_transmissivity(db))
            for length in [50.0, 400.0, 1000.0]:
                sol = bounds.decoherence_lower_bound(ch, hw, length)
                opt = bounds.optimal_params(ch, hw, length)
                np.testing.assert_allclose(opt.n_star + 1.0, sol.v0, rtol=1e-9, err_msg=f'{db} dB {length} km')

    def test_decoherence_lowers_bound(self):
        ch = ChannelParams(0.15, 0.0)
        hw1 = hardware(channels=1)
        hw2 = hardware(channels=1, lambda_mem=0.999)
        for length in [10.0, 100.0, 300.0]:
            r1 = bounds.decoherence_lower_bound(ch, hw1, length).rate_lb
            r2 = bounds.decoherence_lower_bound(ch, hw2, length).rate_lb
            self.assertLess(r2, r1)

    def test_literal_reading(self):
        ch = ChannelParams(0.15, 300.0)
        hw = hardware(lambda_t=db_to_transmissivity(1.0), lambda_mem=0.999)
        a = bounds.decoherence_lower_bound(ch, hw)
        b = bounds.decoherence_lower_bound(ch, hw, literal_log2_reading=True)
        self.assertNotEqual(a.v0, b.v0)
        self.assertLess(b.residual, 1e-10)

    def test_zero_length(self):
        with self.assertRaises(BoundInapplicableError):
            bounds.decoherence_lower_bound(ChannelParams(0.15, 0.0), hardware())

    def test_randomized_residuals(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            hw = hardware(channels=int(rng.integers(30, 201)),
                          mu=float(rng.uniform(0.3, 0.5)),
                          q=float(rng.uniform(0.2, 0.9)),
                          lambda_t=float(rng.uniform(0.95, 1.0)),
                          lambda_mem=float(rng.uniform(0.995, 1.0)))
            ch = ChannelParams(0.15, float(rng.uniform(50.0, 500.0)))
            sol = bounds.decoherence_lower_bound(ch, hw)
            self.assertLess(sol.residual, 1e-10)
            self.assertGreater(sol.v0, 0.0)
            f, scale = bounds.decoherence_equation(ch.alpha_l, hw)
            self.assertLess(abs(f(sol.v0)) / scale(sol.v0), 1e-10)
            s = bounds.spatial_exponent_exact(hw)
            self.assertLess(s.residual, 1e-10)
            self.assertTrue(0.0 < s.z_root < 1.0)


class TestSpatial(unittest.TestCase):

    def test_fifty_channel_exponents(self):
        s = bounds.spatial_exponent_exact(hardware())
        np.testing.assert_allclose(0.046, s.z_root, atol=2e-3)
        self.assertLess(s.residual, 1e-10)
        self.assertGreater(s.s_exact, 0.0)
        np.testing.assert_allclose(math.log(1 / 0.255) / math.log(50 * 0.405), s.u_ub, rtol=1e-14)
        g, _, _ = bounds.spatial_equation(hardware())
        self.assertGreater(g(0.03), 0.0)
        self.assertLess(g(0.06), 0.0)

    def test_upper_exponent(self):
        u = bounds.spatial_exponent_exact(hardware(channels=1000)).u_ub
        np.testing.assert_allclose(0.2276, u, rtol=1e-3)
        # u < 1 exactly when M > 1 / (q * mu) = 9.68
        ch = ChannelParams(0.15, 200.0)
        direct = math.exp(-ch.alpha_l) / (0.255 * 50e-9)
        self.assertLess(bounds.spatial_only_upper_bound(ch, hardware(channels=9)), direct)
        self.assertGreater(bounds.spatial_only_upper_bound(ch, hardware(channels=10)), direct)

    def test_no_root(self):
        with self.assertRaises(RootNotFoundError):
            bounds.spatial_exponent_exact(hardware(channels=1))

    def test_spatial_rates(self):
        hw = hardware()
        ch = ChannelParams(0.15, 200.0)
        s = bounds.spatial_exponent_exact(hw)
        rate = bounds.spatial_only_rate(ch, hw)
        np.testing.assert_allclose(math.exp(-s.s_exact * ch.alpha_l) / (0.255 * 50e-9), rate, rtol=1e-14)
        ub = bounds.spatial_only_upper_bound(ch, hw)
        np.testing.assert_allclose(math.exp(-s.u_ub * ch.alpha_l) / (0.255 * 50e-9), ub, rtol=1e-14)
        with self.assertRaises(BoundInapplicableError):
            bounds.spatial_only_upper_bound(ch, hardware(channels=2))


class TestSummary(unittest.TestCase):

    def test_summary(self):
        ch = ChannelParams(0.15, 400.0)
        s = bounds.bound_summary(ch, hardware())
        for key in ['ub', 'lb', 'lossy_lb', 'decoh_lb', 'plob', 'n_star', 'm_star']:
            self.assertTrue(math.isfinite(s[key]), msg=key)
        self.assertTrue(s['feasible'])
        np.testing.assert_allclose(s['lb'], s['lossy_lb'], rtol=1e-12)

    def test_summary_inapplicable(self):
        ch = ChannelParams(0.15, 0.0)
        s = bounds.bound_summary(ch, hardware(channels=1, lambda_t=0.1))
        self.assertTrue(math.isnan(s['lossy_lb']))
        self.assertTrue(math.isnan(s['decoh_lb']))
        self.assertTrue(math.isnan(s['n_star']))
        self.assertFalse(s['feasible'])
        self.assertEqual(math.inf, s['plob'])
        self.assertTrue(math.isfinite(s['ub']))
