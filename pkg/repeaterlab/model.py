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
Exact rate model of a time-multiplexed repeater chain.

A chain of n repeater stations splits the end-to-end fiber of length L
into n + 1 elementary links.  Each link makes M parallel attempts in each
of the m time slots of a block, and each station swaps one pair of
heralded memories per block.  All functions here are pure.
"""

from dataclasses import dataclass, replace
import logging
import math
import operator

import numpy as np

from repeaterlab.units import to_natural_loss


log = logging.getLogger(__name__)

C_FIBER_KM_PER_S = 2.0e5
"""Default signal speed in fiber."""

MODEL_IDEAL = 'ideal'
MODEL_SWITCH_LOSS = 'switch_loss'
MODEL_WORST_DECOHERENCE = 'switch_plus_worst_decoherence'
LOSS_MODELS = (MODEL_IDEAL, MODEL_SWITCH_LOSS, MODEL_WORST_DECOHERENCE)

MU_MATCH_RTOL = 1e-12


def _probability(name, value, allow_zero=True):
    value = float(value)
    lower_ok = value >= 0.0 if allow_zero else value > 0.0
    if not (lower_ok and value <= 1.0):
        interval = '[0, 1]' if allow_zero else '(0, 1]'
        raise ValueError(f'{name} must be in {interval}, got {value!r}')
    return value


def _integer(name, value, minimum):
    try:
        value = operator.index(value)
    except TypeError:
        raise ValueError(f'{name} must be an integer, got {value!r}')
    if value < minimum:
        raise ValueError(f'{name} must be >= {minimum}, got {value}')
    return int(value)


def ceil_slots(x):
    """Round a slot count up, ignoring floating-point noise.

    100 us / 50 ns evaluates to 2000.0000000000002 in binary floating
    point.  Values within 1e-9 relative of an integer snap to it.
    """
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return int(math.ceil(x))


@dataclass(frozen=True)
class ChannelParams:
    """The end-to-end fiber channel.

    :param alpha_db: The fiber attenuation in dB/km.
    :param length_km: The end-to-end distance L in km.
    :param c_fib: The signal speed in fiber in km/s.
    """
    alpha_db: float
    length_km: float
    c_fib: float = C_FIBER_KM_PER_S

    def __post_init__(self):
        to_natural_loss(self.alpha_db)
        if not float(self.length_km) >= 0.0:
            raise ValueError(f'length_km must be >= 0, got {self.length_km!r}')
        if not float(self.c_fib) > 0.0:
            raise ValueError(f'c_fib must be positive, got {self.c_fib!r}')

    @property
    def alpha(self):
        """The natural attenuation in 1/km."""
        return to_natural_loss(self.alpha_db)

    @property
    def alpha_l(self):
        """The total natural loss alpha * L."""
        return self.alpha * self.length_km

    @property
    def eta(self):
        """The end-to-end channel transmissivity."""
        return math.exp(-self.alpha_l)

    def with_length(self, length_km):
        return replace(self, length_km=length_km)


@dataclass(frozen=True)
class HardwareParams:
    """The repeater hardware.

    :param tau_s: The source repetition period in seconds.
    :param channels: The number M of parallel channels per link.
    :param mu: The linear-optical BSM success probability.  May be None
        when detector_eff is given, in which case mu = detector_eff**2 / 2.
    :param q: The memory entanglement-swap success probability.
    :param lambda_t: The transmissivity of one switch.
    :param lambda_mem: The memory survival probability per time step.
    :param detector_eff: The optional detector efficiency.
    :raise ValueError: On any out-of-range value, or when both mu and
        detector_eff are given and disagree by more than 1e-12 relative.
    """
    tau_s: float
    channels: int
    mu: float = None
    q: float = 1.0
    lambda_t: float = 1.0
    lambda_mem: float = 1.0
    detector_eff: float = None

    def __post_init__(self):
        if not float(self.tau_s) > 0.0:
            raise ValueError(f'tau_s must be positive, got {self.tau_s!r}')
        object.__setattr__(self, 'channels', _integer('channels', self.channels, 1))
        mu = self.mu
        if self.detector_eff is not None:
            eta_d = _probability('detector_eff', self.detector_eff, allow_zero=False)
            mu_d = eta_d * eta_d / 2.0
            if mu is None:
                mu = mu_d
            elif abs(float(mu) - mu_d) > MU_MATCH_RTOL * mu_d:
                raise ValueError(f'mu={mu!r} does not match detector_eff**2/2 = {mu_d!r}')
        if mu is None:
            raise ValueError('mu or detector_eff is required')
        object.__setattr__(self, 'mu', _probability('mu', mu))
        object.__setattr__(self, 'q', _probability('q', self.q))
        object.__setattr__(self, 'lambda_t', _probability('lambda_t', self.lambda_t, allow_zero=False))
        object.__setattr__(self, 'lambda_mem', _probability('lambda_mem', self.lambda_mem, allow_zero=False))

    @property
    def modes_per_second(self):
        """The multiplier M / tau between ebits/mode and ebits/second."""
        return self.channels / self.tau_s


@dataclass(frozen=True)
class RepeaterConfig:
    """The design pair: n repeater stations and block length m."""
    n: int
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'n', _integer('n', self.n, 0))
        object.__setattr__(self, 'm', _integer('m', self.m, 1))


@dataclass(frozen=True)
class DerivedProbabilities:
    lambda_half: float
    p_attempt: float
    p_link: float
    q_eff: float


@dataclass(frozen=True)
class ResourceRequirements:
    """Timing and memory needed to run the block protocol.

    All times are in seconds.  n_mem_min and occupancy_at_meas count
    qubits across all M channels.
    """
    t_latency_s: float
    t1_s: float
    t2_s: float
    j_slots: int
    t_coherence_min_s: float
    n_mem_min: int
    occupancy_at_meas: int


def validate_model(model):
    if model not in LOSS_MODELS:
        raise ValueError(f'unknown loss model {model!r}, expected one of {LOSS_MODELS}')
    return model


def link_success_prob(ch, hw, cfg):
    """Compute the elementary link probabilities for one block.

    :param ch: The :class:`ChannelParams`.
    :param hw: The :class:`HardwareParams`.
    :param cfg: The :class:`RepeaterConfig`.
    :return: The :class:`DerivedProbabilities` with q_eff equal to hw.q.
    """
    lambda_half = math.exp(-ch.alpha_l / (2.0 * (cfg.n + 1)))
    p = hw.mu * lambda_half ** 2
    attempts = hw.channels * cfg.m
    if p >= 1.0:
        p_link = 1.0
    elif attempts == 1:
        p_link = p
    else:
        p_link = 0.0 - math.expm1(attempts * math.log1p(-p))
    return DerivedProbabilities(lambda_half=lambda_half, p_attempt=p, p_link=p_link, q_eff=hw.q)


def effective_swap_prob(hw, m, model=MODEL_IDEAL):
    """Compute the swap success probability after switch and memory loss.

    :param hw: The :class:`HardwareParams`.
    :param m: The block length, a scalar or numpy array.
    :param model: One of :data:`LOSS_MODELS`.  The switch tree has
        log2(m) levels, fractional for m that is not a power of two.
    :return: The effective swap probability.
    """
    validate_model(model)
    if model == MODEL_IDEAL:
        if isinstance(m, np.ndarray):
            return np.full(m.shape, hw.q)
        return hw.q
    if isinstance(m, np.ndarray):
        m = m.astype(float)
        q = hw.q * np.power(hw.lambda_t, np.log2(m))
        if model == MODEL_WORST_DECOHERENCE:
            q = q * np.power(hw.lambda_mem, m)
        return q
    q = hw.q * hw.lambda_t ** math.log2(m)
    if model == MODEL_WORST_DECOHERENCE:
        q *= hw.lambda_mem ** m
    return q


def end_to_end_rate(ch, hw, cfg, model=MODEL_IDEAL):
    """Compute the end-to-end ebit generation rate.

    :return: P**(n+1) * q_eff**n / (m * tau) in ebits/second.
    """
    p_link = link_success_prob(ch, hw, cfg).p_link
    q_eff = effective_swap_prob(hw, cfg.m, model)
    return p_link ** (cfg.n + 1) * q_eff ** cfg.n / (cfg.m * hw.tau_s)


def end_to_end_rate_grid(ch, hw, n, m, model=MODEL_IDEAL):
    """Compute the end-to-end rate over broadcastable arrays of n and m.

    :param n: The repeater counts, integer array.
    :param m: The block lengths, integer array.
    :return: The rate array with the broadcast shape of n and m.
    """
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    lambda_half = np.exp(-ch.alpha_l / (2.0 * (n + 1.0)))
    p = hw.mu * lambda_half ** 2
    with np.errstate(divide='ignore'):
        log_fail = np.log1p(-p)
    p_link = 0.0 - np.expm1(hw.channels * m * log_fail)
    q_eff = effective_swap_prob(hw, m, model)
    return p_link ** (n + 1.0) * q_eff ** n / (m * hw.tau_s)


def plob_rate(ch, hw):
    """Compute the repeaterless capacity over M parallel channels.

    :return: (M / tau) * log2(1 / (1 - eta)) in ebits/second, which is
        float('inf') for a lossless channel (L = 0).
    """
    eta = ch.eta
    if eta >= 1.0:
        return math.inf
    return hw.modes_per_second * -math.log1p(-eta) / math.log(2.0)


def rate_per_mode(rate, hw):
    """Convert ebits/second to ebits/mode."""
    return rate / hw.modes_per_second


def resource_requirements(ch, hw, cfg):
    """Compute latency, coherence time and memory register size.

    :return: The :class:`ResourceRequirements`.
    """
    t1 = ch.length_km / ((cfg.n + 1) * ch.c_fib)
    t2 = cfg.m * hw.tau_s
    j = ceil_slots(t1 / hw.tau_s)
    t_latency = t2 + t1
    return ResourceRequirements(
        t_latency_s=t_latency,
        t1_s=t1,
        t2_s=t2,
        j_slots=j,
        t_coherence_min_s=t_latency - hw.tau_s,
        n_mem_min=2 * (cfg.m + j) * hw.channels,
        occupancy_at_meas=2 * (j + 1) * hw.channels,
    )


def register_occupancy(ch, hw, cfg, slots):
    """Compute the memory register occupancy after each time slot.

    Two qubits per channel load in every slot.  The first swap happens
    at slot m + j, after which every m slots the register drops the 2m
    oldest qubits per channel.

    :param slots: The number of slots to compute.
    :return: The integer numpy array of occupancy, length slots.
    """
    j = resource_requirements(ch, hw, cfg).j_slots
    m = cfg.m
    k = np.arange(slots, dtype=np.int64)
    filling = 2 * (k + 1)
    steady = 2 * (j + 1 + np.mod(k - m - j, m))
    occupancy = np.where(k < m + j, filling, steady)
    return occupancy * hw.channels
