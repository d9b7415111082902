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
Integer optimization of the exact rate over the design pair (n, m).

For fixed n, the rate is unimodal in m: the logarithmic derivative
(n+1)*phi(c*m) + n*m*log(lambda_mem) - 1 + n*log2(lambda_t), with
phi(x) = x / (exp(x) - 1), decreases in m.  The default 'bisect' search
exploits this to find the best m for every n at once.  The 'grid' search
evaluates every (n, m) pair and serves as a brute-force reference.

Ties resolve to the smallest n, then the smallest m.
"""

from dataclasses import dataclass, replace
import logging
import math

import numpy as np
from scipy import stats

from repeaterlab import bounds
from repeaterlab.model import end_to_end_rate, end_to_end_rate_grid, plob_rate, \
    validate_model, RepeaterConfig, MODEL_IDEAL
from repeaterlab.workers import map_ordered


log = logging.getLogger(__name__)

CAP_MIN = 50
CAP_SCALE = 4.0
M_BLOCK_MAX = 2 ** 48
GRID_CELLS_MAX = 20_000_000

SEARCH_BISECT = 'bisect'
SEARCH_GRID = 'grid'
SEARCH_MODES = (SEARCH_BISECT, SEARCH_GRID)

SCALING_SQRT = 'sqrt-exponent'
SCALING_LINEAR = 'linear-exponent'
SCALING_MODELS = (SCALING_SQRT, SCALING_LINEAR)
FIT_POINTS_MIN = 5

CROSSOVER_RESOLUTION_KM = 0.1


@dataclass(frozen=True)
class SearchCaps:
    """Inclusive search limits, n in [0, n_max] and m in [1, m_max].

    None selects the default derived from the continuous optimum.
    """
    n_max: int = None
    m_max: int = None


@dataclass(frozen=True)
class EnvelopePoint:
    """The optimized rate at one length.

    :param length_km: The end-to-end length.
    :param rate: The rate in ebits/second at (n_opt, m_opt).
    :param n_opt: The optimal repeater count.
    :param m_opt: The optimal block length.
    :param plob: The repeaterless capacity at the same length.
    :param beats_plob: rate > plob.
    :param alpha_l: The natural loss alpha * L.
    :param cap_hit: True when the argmax sits on a search cap.
    """
    length_km: float
    rate: float
    n_opt: int
    m_opt: int
    plob: float
    beats_plob: bool
    alpha_l: float = math.nan
    cap_hit: bool = False


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float
    model: str


def _caps_hardware(hw, model):
    # switch loss is irrelevant to the ideal model
    if model == MODEL_IDEAL and hw.lambda_t != 1.0:
        return replace(hw, lambda_t=1.0)
    return hw


def default_caps(ch, hw, model=MODEL_IDEAL, caps=None):
    """Resolve the search caps at the channel length.

    The defaults are max(50, ceil(4 n*)) and max(50, ceil(4 m*)) from the
    continuous optimum, or 50 when that optimum does not exist.

    :return: The resolved (n_max, m_max).
    """
    caps = SearchCaps() if caps is None else caps
    n_max, m_max = caps.n_max, caps.m_max
    if n_max is None or m_max is None:
        try:
            p = bounds.optimal_params(ch, _caps_hardware(hw, model))
            n_default = max(CAP_MIN, math.ceil(CAP_SCALE * max(p.n_star, 0.0)))
            m_default = CAP_MIN if not math.isfinite(p.m_star) else \
                max(CAP_MIN, math.ceil(CAP_SCALE * min(p.m_star, float(M_BLOCK_MAX))))
        except bounds.BoundInapplicableError:
            n_default, m_default = CAP_MIN, CAP_MIN
        n_max = n_default if n_max is None else n_max
        m_max = m_default if m_max is None else m_max
    if n_max < 0 or m_max < 1:
        raise ValueError(f'invalid search caps n_max={n_max!r} m_max={m_max!r}')
    if m_max > M_BLOCK_MAX:
        log.warning('m_max %d clamped to %d', m_max, M_BLOCK_MAX)
        m_max = M_BLOCK_MAX
    return int(n_max), int(m_max)


def best_block_lengths(ch, hw, n, m_max, model=MODEL_IDEAL):
    """Find the best block length for each repeater count.

    :param n: The integer array of repeater counts.
    :param m_max: The maximum block length.
    :return: The integer array of the smallest maximizing m for each n.
    """
    n = np.asarray(n, dtype=np.int64)
    lo = np.ones(n.shape, dtype=np.int64)
    hi = np.full(n.shape, m_max, dtype=np.int64)
    active = lo < hi
    while np.any(active):
        mid = (lo + hi) // 2
        rising = end_to_end_rate_grid(ch, hw, n, mid + 1, model) > \
            end_to_end_rate_grid(ch, hw, n, mid, model)
        lo = np.where(active & rising, mid + 1, lo)
        hi = np.where(active & ~rising, mid, hi)
        active = lo < hi
    return lo


def _argmax_bisect(ch, hw, n_max, m_max, model):
    n = np.arange(n_max + 1, dtype=np.int64)
    m = best_block_lengths(ch, hw, n, m_max, model)
    rates = end_to_end_rate_grid(ch, hw, n, m, model)
    idx = int(np.argmax(rates))
    return int(n[idx]), int(m[idx])


def _argmax_grid(ch, hw, n_max, m_max, model):
    cells = (n_max + 1) * m_max
    if cells > GRID_CELLS_MAX:
        raise ValueError(f'grid search of {cells} cells exceeds {GRID_CELLS_MAX}')
    n = np.arange(n_max + 1, dtype=np.int64).reshape((-1, 1))
    m = np.arange(1, m_max + 1, dtype=np.int64).reshape((1, -1))
    rates = end_to_end_rate_grid(ch, hw, n, m, model)
    n_idx, m_idx = np.unravel_index(int(np.argmax(rates)), rates.shape)
    return int(n_idx), int(m_idx) + 1


def _point(ch, hw, n_opt, m_opt, model, cap_hit):
    rate = end_to_end_rate(ch, hw, RepeaterConfig(n_opt, m_opt), model)
    plob = plob_rate(ch, hw)
    return EnvelopePoint(length_km=ch.length_km, rate=rate, n_opt=n_opt, m_opt=m_opt,
                         plob=plob, beats_plob=bool(rate > plob), alpha_l=ch.alpha_l,
                         cap_hit=cap_hit)


def exact_envelope(ch, hw, length_km=None, model=MODEL_IDEAL, caps=None, search=None):
    """Maximize the exact rate over integer n and m.

    :param ch: The :class:`ChannelParams`.
    :param hw: The :class:`HardwareParams`.
    :param length_km: The length, or None for ch.length_km.
    :param model: The loss model.
    :param caps: The :class:`SearchCaps`, or None for the defaults.
    :param search: 'bisect' (default) or 'grid'.
    :return: The :class:`EnvelopePoint`.  cap_hit is set, and a warning
        logged, when the argmax lies on n_max or m_max.
    """
    validate_model(model)
    search = SEARCH_BISECT if search is None else search
    if search not in SEARCH_MODES:
        raise ValueError(f'unknown search mode {search!r}')
    if length_km is not None:
        ch = ch.with_length(length_km)
    n_max, m_max = default_caps(ch, hw, model, caps)
    if search == SEARCH_GRID:
        n_opt, m_opt = _argmax_grid(ch, hw, n_max, m_max, model)
    else:
        n_opt, m_opt = _argmax_bisect(ch, hw, n_max, m_max, model)
    cap_hit = (n_opt == n_max and n_max > 0) or (m_opt == m_max and m_max > 1)
    if cap_hit:
        log.warning('L=%g km: argmax (n=%d, m=%d) on search cap (n_max=%d, m_max=%d)',
                    ch.length_km, n_opt, m_opt, n_max, m_max)
    return _point(ch, hw, n_opt, m_opt, model, cap_hit)


def fixed_m_envelope(ch, hw, m, lengths, model=MODEL_IDEAL, n_max=None):
    """Maximize the exact rate over n with the block length held at m.

    :param m: The fixed block length.
    :param lengths: The iterable of lengths in km.
    :param n_max: The repeater count cap, or None for the default.
    :return: The list of :class:`EnvelopePoint`, one per length.
    """
    validate_model(model)
    cfg = RepeaterConfig(0, m)
    points = []
    for length_km in lengths:
        ch_l = ch.with_length(length_km)
        cap = default_caps(ch_l, hw, model, SearchCaps(n_max=n_max, m_max=cfg.m))[0]
        n = np.arange(cap + 1, dtype=np.int64)
        rates = end_to_end_rate_grid(ch_l, hw, n, cfg.m, model)
        n_opt = int(np.argmax(rates))
        cap_hit = n_opt == cap and cap > 0
        if cap_hit:
            log.warning('L=%g km, m=%d: argmax n=%d on search cap', length_km, cfg.m, n_opt)
        points.append(_point(ch_l, hw, n_opt, cfg.m, model, cap_hit))
    return points


def envelope_sweep(ch, hw, lengths, model=MODEL_IDEAL, caps=None, search=None, workers=None):
    """Compute the exact envelope at each length.

    :param lengths: The iterable of lengths in km.
    :param workers: The requested worker thread count.
    :return: The list of :class:`EnvelopePoint` in the order of lengths.
    """
    def fn(length_km):
        return exact_envelope(ch, hw, length_km, model=model, caps=caps, search=search)
    return map_ordered(fn, lengths, workers)


def fit_scaling(points, model=SCALING_SQRT):
    """Fit log(rate) against sqrt(alpha*L) or alpha*L.

    :param points: The list of :class:`EnvelopePoint` with alpha_l set.
    :param model: 'sqrt-exponent' or 'linear-exponent'.
    :return: The :class:`ScalingFit`.
    :raise ValueError: On fewer than 5 points, nonpositive rates or
        identical abscissae.
    """
    if model not in SCALING_MODELS:
        raise ValueError(f'unknown scaling model {model!r}')
    if len(points) < FIT_POINTS_MIN:
        raise ValueError(f'fit requires at least {FIT_POINTS_MIN} points, got {len(points)}')
    alpha_l = np.array([p.alpha_l for p in points], dtype=float)
    rates = np.array([p.rate for p in points], dtype=float)
    if not np.all(rates > 0):
        raise ValueError('fit requires all rates > 0')
    if not np.all(np.isfinite(alpha_l)):
        raise ValueError('fit requires alpha_l for every point')
    x = np.sqrt(alpha_l) if model == SCALING_SQRT else alpha_l
    if np.ptp(x) == 0.0:
        raise ValueError('degenerate regression: all abscissae identical')
    result = stats.linregress(x, np.log(rates))
    r_squared = min(1.0, max(0.0, float(result.rvalue) ** 2))
    return ScalingFit(slope=float(result.slope), intercept=float(result.intercept),
                      r_squared=r_squared, model=model)


def crossover_distance(ch, hw, model=MODEL_IDEAL, start_km=1.0, stop_km=1000.0, step_km=1.0,
                       caps=None, workers=None):
    """Find the shortest length where the optimized rate beats PLOB.

    :param start_km: The first grid length.
    :param stop_km: The last grid length.
    :param step_km: The coarse grid step.
    :return: The crossover length in km, refined to 0.1 km, or None when
        the envelope never beats PLOB on the grid.
    """
    count = int(math.floor((stop_km - start_km) / step_km + 1e-9)) + 1
    lengths = [start_km + k * step_km for k in range(count)]
    points = envelope_sweep(ch, hw, lengths, model=model, caps=caps, workers=workers)
    for idx, point in enumerate(points):
        if point.beats_plob:
            break
    else:
        return None
    hi = lengths[idx]
    if idx == 0:
        return hi
    lo = lengths[idx - 1]
    while hi - lo > CROSSOVER_RESOLUTION_KM:
        mid = 0.5 * (lo + hi)
        if exact_envelope(ch, hw, mid, model=model, caps=caps).beats_plob:
            hi = mid
        else:
            lo = mid
    log.info('crossover at %.1f km', hi)
    return hi
