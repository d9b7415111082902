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
Monte Carlo simulation of the block protocol and the memory wait times.

Random streams
--------------

Trials are split into chunks of :data:`CHUNK_TRIALS`.  Chunk k draws from
a Philox counter-based generator keyed by SeedSequence(seed,
spawn_key=(k,)), so every trial's stream depends only on the seed and the
trial's chunk.  Chunks run on any number of worker threads and their
integer counts are summed in chunk order: results are bit-identical for
every worker count.

Wait-time protocols
-------------------

first_success
    Each side of a repeater swaps the memory of its first heralded slot.
    X in [1, m] is the first success slot and Y = |X_L - X_R|.

least_wait_end_of_block
    Each side swaps the memory heralded last in the block.  X in
    [0, m - 1] counts slots back from the end of the block and
    Y = X_L + X_R.

Slots succeed with probability 1 - (1 - p)**M across the M parallel
channels.  Blocks in which any link fails every slot deliver no ebit and
contribute no wait-time sample.
"""

from dataclasses import dataclass
import logging
import math
from typing import NamedTuple

import numpy as np

from repeaterlab.model import effective_swap_prob, link_success_prob, MODEL_IDEAL, \
    MODEL_SWITCH_LOSS, validate_model
from repeaterlab.workers import map_ordered


log = logging.getLogger(__name__)

CHUNK_TRIALS = 65536
TRIALS_RELIABLE_MIN = 100
SEED_MAX = 2 ** 64 - 1

PROTOCOL_FIRST_SUCCESS = 'first_success'
PROTOCOL_LEAST_WAIT = 'least_wait_end_of_block'
PROTOCOLS = (PROTOCOL_FIRST_SUCCESS, PROTOCOL_LEAST_WAIT)


class EmptyStatisticsError(RuntimeError):
    """No simulated block delivered a wait-time sample."""
    pass


@dataclass(frozen=True)
class SimConfig:
    """The Monte Carlo settings.

    :param seed: The 64-bit seed.
    :param trials: The number of blocks (or samples) to simulate.
    :param workers: The worker thread hint, None for the CPU count.
    """
    seed: int = 0
    trials: int = 100000
    workers: int = None

    def __post_init__(self):
        if int(self.trials) < 1:
            raise ValueError(f'trials must be >= 1, got {self.trials!r}')
        if not 0 <= int(self.seed) <= SEED_MAX:
            raise ValueError(f'seed must be a 64-bit unsigned integer, got {self.seed!r}')


@dataclass(frozen=True)
class BlockOutcome:
    """One explicitly simulated block.

    :param link_success: The n + 1 link flags.
    :param first_slot: The 1-based first success slot per link, or None.
    :param last_slot: The 1-based last success slot per link, or None.
    :param swap_success: The n swap flags.
    :param delivered: True when every link and every swap succeeded.
    """
    link_success: tuple
    first_slot: tuple
    last_slot: tuple
    swap_success: tuple
    delivered: bool


class RateEstimate(NamedTuple):
    rate: float
    stderr: float
    delivered: int
    trials: int


class ProtocolRate(NamedTuple):
    analytic_rate: float
    mc_rate: float
    mc_stderr: float
    mean_y: float


@dataclass(frozen=True)
class WaitTimeStats:
    """Sampled and closed-form statistics of the memory wait times.

    x_left, x_right and y have one row per contributing block and one
    column per repeater node.
    """
    protocol: str
    x_left: np.ndarray
    x_right: np.ndarray
    y: np.ndarray
    mean_y: float
    mean_y_stderr: float
    delta1_analytic: float
    delta1_truncated: float
    mean_x_analytic: float
    s_mean: float
    blocks: int
    trials: int


def validate_protocol(protocol):
    if protocol not in PROTOCOLS:
        raise ValueError(f'unknown protocol {protocol!r}, expected one of {PROTOCOLS}')
    return protocol


def chunk_generator(seed, chunk):
    """Get the generator for one chunk of trials."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(chunk),))
    return np.random.Generator(np.random.Philox(ss))


def chunk_sizes(trials):
    """Split trials into the fixed chunk sizes."""
    full, rest = divmod(int(trials), CHUNK_TRIALS)
    return [CHUNK_TRIALS] * full + ([rest] if rest else [])


def _run_chunks(sim, fn):
    sizes = chunk_sizes(sim.trials)
    return map_ordered(lambda k: fn(chunk_generator(sim.seed, k), sizes[k]),
                       range(len(sizes)), sim.workers)


def _warn_trials(sim):
    if sim.trials < TRIALS_RELIABLE_MIN:
        log.warning('%d trials < %d: error bars are unreliable', sim.trials, TRIALS_RELIABLE_MIN)


def slot_success_prob(p_attempt, channels):
    """The probability 1 - (1 - p)**M that at least one channel succeeds in a slot."""
    if p_attempt >= 1.0:
        return 1.0
    return -math.expm1(channels * math.log1p(-p_attempt))


def _first_success(rng, p, size, limit):
    """Draw the 1-based index of the first success, limit + 1 for none."""
    if p <= 0.0:
        return np.full(size, limit + 1, dtype=np.int64)
    g = rng.geometric(p, size=size)
    return np.minimum(g, limit + 1)


def _binomial_rate(delivered, trials, m, tau_s):
    f = delivered / trials
    return RateEstimate(rate=f / (m * tau_s),
                        stderr=math.sqrt(f * (1.0 - f) / trials) / (m * tau_s),
                        delivered=int(delivered), trials=int(trials))


def simulate_block(ch, hw, cfg, model=MODEL_IDEAL, rng=None):
    """Simulate one block attempt by attempt.

    Every link draws M Bernoulli attempts in each of its m slots.

    :param rng: The numpy Generator, None for a fresh unseeded one.
    :return: The :class:`BlockOutcome`.
    """
    rng = np.random.default_rng() if rng is None else rng
    probs = link_success_prob(ch, hw, cfg)
    q_eff = effective_swap_prob(hw, cfg.m, model)
    attempts = rng.random((cfg.n + 1, cfg.m, hw.channels)) < probs.p_attempt
    slots = np.any(attempts, axis=2)
    link_success = np.any(slots, axis=1)
    first, last = [], []
    for k in range(cfg.n + 1):
        if link_success[k]:
            idx = np.flatnonzero(slots[k])
            first.append(int(idx[0]) + 1)
            last.append(int(idx[-1]) + 1)
        else:
            first.append(None)
            last.append(None)
    swaps = rng.random(cfg.n) < q_eff
    delivered = bool(np.all(link_success) and np.all(swaps))
    return BlockOutcome(link_success=tuple(bool(x) for x in link_success),
                        first_slot=tuple(first), last_slot=tuple(last),
                        swap_success=tuple(bool(x) for x in swaps),
                        delivered=delivered)


def simulate_rate(ch, hw, cfg, model=MODEL_IDEAL, sim=None):
    """Estimate the end-to-end rate by simulating blocks.

    Each link is attempted M*m times, and each of the n swaps succeeds
    with the effective swap probability of the loss model.

    :return: The :class:`RateEstimate` in ebits/second.
    """
    validate_model(model)
    sim = SimConfig() if sim is None else sim
    _warn_trials(sim)
    p = link_success_prob(ch, hw, cfg).p_attempt
    q_eff = effective_swap_prob(hw, cfg.m, model)
    attempts = hw.channels * cfg.m

    def chunk(rng, size):
        links = _first_success(rng, p, (size, cfg.n + 1), attempts) <= attempts
        swaps = rng.random((size, cfg.n)) < q_eff
        ok = np.all(links, axis=1) & np.all(swaps, axis=1)
        return int(np.count_nonzero(ok))

    delivered = sum(_run_chunks(sim, chunk))
    return _binomial_rate(delivered, sim.trials, cfg.m, hw.tau_s)


def delta1_analytic(p):
    """Mean of |X1 - X2| for independent untruncated geometric X on {1, 2, ...}.

    :return: 2*(1 - p) / ((2 - p)*p).
    """
    return 2.0 * (1.0 - p) / ((2.0 - p) * p)


def delta1_truncated(p, m):
    """Mean of |X1 - X2| for independent geometric X conditioned on X <= m."""
    if m <= 1 or p >= 1.0:
        return 0.0
    k = np.arange(1, m, dtype=float)
    cdf = -np.expm1(k * math.log1p(-p)) / -math.expm1(m * math.log1p(-p))
    return float(np.sum(2.0 * cdf * (1.0 - cdf)))


def mean_first_success(p, m):
    """Mean first success slot, conditioned on a success within m slots."""
    if p >= 1.0:
        return 1.0
    r = 1.0 - p
    return 1.0 / p - m * r ** m / (1.0 - r ** m)


def mean_x_least_wait(p, channels, m):
    """Mean slots back from the block end to the last success.

    :return: r/(1 - r) - m*r**m/(1 - r**m) with r = (1 - p)**M.
    """
    r = (1.0 - p) ** channels
    if r <= 0.0:
        return 0.0
    return r / (1.0 - r) - m * r ** m / (1.0 - r ** m)


def mean_x_least_wait_pmf(p, channels, m):
    """Same as :func:`mean_x_least_wait` by direct summation of the pmf."""
    r = (1.0 - p) ** channels
    k = np.arange(m, dtype=float)
    pmf = (1.0 - r) * r ** k
    return float(np.sum(k * pmf) / np.sum(pmf))


def _wait_times(rng, size, s, n, m, protocol):
    g = _first_success(rng, s, (size, n + 1), m)
    ok = np.all(g <= m, axis=1)
    if protocol == PROTOCOL_FIRST_SUCCESS:
        x = g
        y = np.abs(x[:, :-1] - x[:, 1:])
    else:
        x = g - 1
        y = x[:, :-1] + x[:, 1:]
    return x, y, ok


def simulate_wait_times(ch, hw, cfg, protocol=PROTOCOL_FIRST_SUCCESS, sim=None):
    """Sample the memory wait times of a scheduling protocol.

    :param protocol: 'first_success' or 'least_wait_end_of_block'.
    :return: The :class:`WaitTimeStats`.
    :raise ValueError: If the chain has no repeater (n = 0).
    :raise EmptyStatisticsError: If no block succeeded on every link.
    """
    validate_protocol(protocol)
    sim = SimConfig() if sim is None else sim
    _warn_trials(sim)
    if cfg.n < 1:
        raise ValueError('wait times require at least one repeater')
    p = link_success_prob(ch, hw, cfg).p_attempt
    s = slot_success_prob(p, hw.channels)

    def chunk(rng, size):
        x, y, ok = _wait_times(rng, size, s, cfg.n, cfg.m, protocol)
        return x[ok], y[ok]

    results = _run_chunks(sim, chunk)
    x = np.concatenate([r[0] for r in results])
    y = np.concatenate([r[1] for r in results]).astype(float)
    blocks = len(y)
    if blocks == 0:
        raise EmptyStatisticsError(f'no successful block in {sim.trials} trials')
    mean_y = float(np.mean(y))
    stderr = float(np.std(y) / math.sqrt(y.size)) if y.size > 1 else math.inf
    if s > 0.0:
        d1 = delta1_analytic(s)
        d1_trunc = delta1_truncated(s, cfg.m)
    else:
        d1 = d1_trunc = math.nan
    if protocol == PROTOCOL_FIRST_SUCCESS:
        mean_x = mean_first_success(s, cfg.m)
    else:
        mean_x = mean_x_least_wait(p, hw.channels, cfg.m)
    if cfg.m > 1 and s > 0.0:
        log.info('delta1 %.6g untruncated vs %.6g truncated at m=%d', d1, d1_trunc, cfg.m)
    return WaitTimeStats(protocol=protocol, x_left=x[:, :-1], x_right=x[:, 1:], y=y,
                         mean_y=mean_y, mean_y_stderr=stderr,
                         delta1_analytic=d1, delta1_truncated=d1_trunc,
                         mean_x_analytic=mean_x, s_mean=cfg.n * d1,
                         blocks=blocks, trials=sim.trials)


def sample_geometric_difference(p, sim=None):
    """Sample |X1 - X2| for independent untruncated geometric X.

    :return: (mean, stderr).
    """
    sim = SimConfig() if sim is None else sim
    if not 0.0 < p <= 1.0:
        raise ValueError(f'p must be in (0, 1], got {p!r}')

    def chunk(rng, size):
        x = rng.geometric(p, size=(2, size))
        d = np.abs(x[0] - x[1]).astype(float)
        return float(np.sum(d)), float(np.sum(d * d))

    results = _run_chunks(sim, chunk)
    total = math.fsum(r[0] for r in results)
    total_sq = math.fsum(r[1] for r in results)
    n = sim.trials
    mean = total / n
    var = max(0.0, total_sq / n - mean * mean)
    return mean, math.sqrt(var / n)


def expected_wait(p, channels, m, protocol):
    """The mean wait Y used by the Jensen lower bound."""
    s = slot_success_prob(p, channels)
    if protocol == PROTOCOL_FIRST_SUCCESS:
        return delta1_analytic(s) if s > 0.0 else math.inf
    return 2.0 * mean_x_least_wait(p, channels, m)


def rate_with_protocol_decoherence(ch, hw, cfg, protocol=PROTOCOL_FIRST_SUCCESS, sim=None):
    """Compare the Jensen lower bound with the simulated rate when memories
    decay with the actual wait Y.

    The analytic branch uses q * lambda_t**log2(m) * lambda_mem**<Y> for
    every swap.  The simulation thins each swap by lambda_mem**Y of its
    own node.

    :return: The :class:`ProtocolRate`.
    """
    validate_protocol(protocol)
    sim = SimConfig() if sim is None else sim
    _warn_trials(sim)
    probs = link_success_prob(ch, hw, cfg)
    q_switch = effective_swap_prob(hw, cfg.m, MODEL_SWITCH_LOSS)
    mean_y = expected_wait(probs.p_attempt, hw.channels, cfg.m, protocol)
    q_node = q_switch * hw.lambda_mem ** mean_y
    analytic = probs.p_link ** (cfg.n + 1) * q_node ** cfg.n / (cfg.m * hw.tau_s)
    s = slot_success_prob(probs.p_attempt, hw.channels)

    def chunk(rng, size):
        _, y, ok = _wait_times(rng, size, s, cfg.n, cfg.m, protocol)
        swaps = rng.random((size, cfg.n)) < q_switch * np.power(hw.lambda_mem, y)
        delivered = ok & np.all(swaps, axis=1)
        return int(np.count_nonzero(delivered)), float(np.sum(y[ok])), int(np.count_nonzero(ok))

    results = _run_chunks(sim, chunk)
    delivered = sum(r[0] for r in results)
    y_total = math.fsum(r[1] for r in results)
    blocks = sum(r[2] for r in results)
    if blocks == 0:
        raise EmptyStatisticsError(f'no successful block in {sim.trials} trials')
    estimate = _binomial_rate(delivered, sim.trials, cfg.m, hw.tau_s)
    mean_y_sampled = y_total / (blocks * cfg.n) if cfg.n else 0.0
    return ProtocolRate(analytic_rate=analytic, mc_rate=estimate.rate,
                        mc_stderr=estimate.stderr, mean_y=mean_y_sampled)
