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
Closed-form and transcendental bounds on the optimized rate.

Unadorned logarithms are natural logarithms: the bounds come from the
substitution log(x) = -alpha*L with x = exp(-alpha*L).  Base-2
logarithms appear only through the switch tree depth log2(m), which
makes log2(lambda_t) the per-doubling switch loss exponent.

The bounds optimize over continuous n and m.  Most take the end-to-end
length as an explicit argument so that one channel description can be
swept; length_km=None uses the channel's own length.
"""

from dataclasses import dataclass
import logging
import math

from repeaterlab.model import plob_rate
from repeaterlab.rootfind import find_root, RootNotFoundError


log = logging.getLogger(__name__)

LOSS_FACTOR = 1.0 - 1.0 / math.e
"""Lower limit of (1 - 1/k)**k for integer k >= 1, taken as k grows."""

LOW_SWITCH_LOSS_LAMBDA_T = 10.0 ** -0.2
"""Switch transmissivity (2 dB) at and above which the subexponential term
of the lossy bound dominates for moderate loss."""

Z_DOMAIN = (1e-15, 1.0 - 1e-15)
V_SCAN_SPAN = 2.0 ** 60


class BoundInapplicableError(ValueError):
    """The bound has no real value for these parameters."""
    pass


@dataclass(frozen=True)
class BoundConstants:
    """The constants of a rate bound of the form
    prefactor * exp(-c_exp * alpha*L - 2 * c_sub * sqrt(alpha*L)).

    :param c_exp: The exponential coefficient.
    :param c_sub: The subexponential coefficient.
    :param c0: The optimal scaling constant, n* + 1 = c0 * sqrt(alpha*L).
    :param prefactor: The leading multiplier in ebits/second.
    """
    c_exp: float
    c_sub: float
    c0: float
    prefactor: float


@dataclass(frozen=True)
class SpatialExponents:
    """Rate exponents without time multiplexing (m = 1).

    :param s_exact: The exponent s in exp(-s * alpha*L).
    :param z_root: The solution z in (0, 1) of the exponent equation.
    :param u_ub: The upper-bound exponent, or None when mu*M <= 1.
    :param residual: The relative residual of the z equation.
    """
    s_exact: float
    z_root: float
    u_ub: float
    residual: float


@dataclass(frozen=True)
class DecoherenceBoundSolution:
    v0: float
    rate_lb: float
    residual: float


@dataclass(frozen=True)
class OptimalParams:
    """Continuous and integer optimal design parameters.

    feasible is False in the forbidden region where fewer than one
    repeater (or a block shorter than one slot) is optimal.
    """
    n_star: float
    m_star: float
    n_int: int
    m_int: int
    feasible: bool


def _alpha_l(ch, length_km):
    length_km = ch.length_km if length_km is None else length_km
    if length_km < 0:
        raise ValueError(f'length_km must be >= 0, got {length_km!r}')
    return ch.alpha * length_km


def _require_lossy_hardware(hw):
    if hw.q <= 0.0 or hw.mu <= 0.0:
        raise BoundInapplicableError(f'bounds require q > 0 and mu > 0, got q={hw.q!r} mu={hw.mu!r}')


def upper_coefficient(q):
    """The decay coefficient 2*sqrt(log(1/q)) of the upper bound."""
    return 2.0 * math.sqrt(-math.log(q))


def lower_coefficient(q):
    """The decay coefficient 2*sqrt(log(1/(q*(1-1/e)))) of the lower bound."""
    return 2.0 * math.sqrt(-math.log(q * LOSS_FACTOR))


def subexp_prefactor(hw):
    """The prefactor M*mu/(q*tau) of both subexponential bounds."""
    return hw.channels * hw.mu / (hw.q * hw.tau_s)


def subexp_upper_bound(ch, hw, length_km=None):
    """Upper bound on the optimized rate with ideal switches and memories.

    :param ch: The :class:`ChannelParams`.
    :param hw: The :class:`HardwareParams`.  lambda_t and lambda_mem are ignored.
    :param length_km: The length, or None for ch.length_km.
    :return: (M*mu/(q*tau)) * exp(-2*sqrt(log(1/q)) * sqrt(alpha*L)).
    """
    _require_lossy_hardware(hw)
    alpha_l = _alpha_l(ch, length_km)
    return subexp_prefactor(hw) * math.exp(-upper_coefficient(hw.q) * math.sqrt(alpha_l))


def subexp_lower_bound(ch, hw, length_km=None):
    """Lower bound on the optimized rate with ideal switches and memories.

    Identical to :func:`subexp_upper_bound` except that q becomes
    q*(1 - 1/e) inside the square root.
    """
    _require_lossy_hardware(hw)
    alpha_l = _alpha_l(ch, length_km)
    return subexp_prefactor(hw) * math.exp(-lower_coefficient(hw.q) * math.sqrt(alpha_l))


def _log2_lambda_t(hw):
    return math.log2(hw.lambda_t)


def optimal_denominator(hw):
    """Compute log(M*mu)*log2(lambda_t) - log(q*(1-1/e)).

    This is the curvature D of the bound exponent in the repeater count.
    """
    _require_lossy_hardware(hw)
    return math.log(hw.channels * hw.mu) * _log2_lambda_t(hw) - math.log(hw.q * LOSS_FACTOR)


def c_sub_squared(hw):
    """Compute c_sub**2 in its compact logarithm form."""
    _require_lossy_hardware(hw)
    l2 = _log2_lambda_t(hw)
    q_loss = hw.q * LOSS_FACTOR
    mm = hw.channels * hw.mu
    return l2 * math.log(mm ** (1.0 + l2) / q_loss) - math.log(q_loss)


def c_sub_squared_expanded(hw):
    """Compute c_sub**2 with the logarithms of the compact form expanded."""
    _require_lossy_hardware(hw)
    l2 = _log2_lambda_t(hw)
    log_q_loss = math.log(hw.q * LOSS_FACTOR)
    log_mm = math.log(hw.channels * hw.mu)
    return l2 * (log_mm * l2 + log_mm - log_q_loss) - log_q_loss


def lossy_constants(hw):
    """Compute the :class:`BoundConstants` of the lossy-switch lower bound.

    :raise BoundInapplicableError: If c_sub**2 < 0.
    """
    l2 = _log2_lambda_t(hw)
    c_sub_sq = c_sub_squared(hw)
    if c_sub_sq < 0.0:
        raise BoundInapplicableError(
            f'c_sub**2 = {c_sub_sq!r} < 0 for lambda_t={hw.lambda_t!r}, M*mu={hw.channels * hw.mu!r}')
    d = optimal_denominator(hw)
    c0 = math.sqrt((l2 + 1.0) / d) if d > 0.0 and l2 + 1.0 > 0.0 else math.nan
    prefactor = (hw.channels * hw.mu) ** (l2 + 1.0) / (hw.q * hw.tau_s)
    return BoundConstants(c_exp=-l2 + 0.0, c_sub=math.sqrt(c_sub_sq), c0=c0, prefactor=prefactor)


def lossy_lower_bound(ch, hw, length_km=None):
    """Lower bound on the optimized rate with lossy switches.

    The swap success becomes q * lambda_t**log2(m).

    :return: (rate, :class:`BoundConstants`).
    :raise BoundInapplicableError: If c_sub**2 < 0.
    """
    alpha_l = _alpha_l(ch, length_km)
    c = lossy_constants(hw)
    rate = c.prefactor * math.exp(-c.c_exp * alpha_l - 2.0 * c.c_sub * math.sqrt(alpha_l))
    return rate, c


def lossy_regime(ch, hw, length_km=None):
    """Report which term dominates the lossy bound's exponent.

    :return: 'subexponential' when 2*c_sub*sqrt(alpha*L) >= c_exp*alpha*L,
        otherwise 'exponential'.
    """
    alpha_l = _alpha_l(ch, length_km)
    c = lossy_constants(hw)
    if 2.0 * c.c_sub * math.sqrt(alpha_l) >= c.c_exp * alpha_l:
        return 'subexponential'
    return 'exponential'


def optimal_params(ch, hw, length_km=None):
    """Compute the optimal repeater count and block length.

    :return: The :class:`OptimalParams`.
    :raise BoundInapplicableError: If the denominator
        log(M*mu)*log2(lambda_t) - log(q*(1-1/e)) is not positive, or
        lambda_t <= 1/2 so that no repeater count is optimal.
    """
    alpha_l = _alpha_l(ch, length_km)
    d = optimal_denominator(hw)
    if d <= 0.0:
        raise BoundInapplicableError(f'optimal parameter denominator {d!r} <= 0')
    numerator = _log2_lambda_t(hw) + 1.0
    if numerator <= 0.0:
        raise BoundInapplicableError(f'lambda_t={hw.lambda_t!r} <= 1/2 has no optimal repeater count')
    c0 = math.sqrt(numerator / d)
    root = math.sqrt(alpha_l)
    n_star = c0 * root - 1.0
    # alpha*L / (n* + 1) == sqrt(alpha*L) / c0, finite at L = 0
    try:
        m_star = math.exp(root / c0) / (hw.channels * hw.mu)
    except OverflowError:
        m_star = math.inf
    n_int = max(0, math.floor(n_star))
    m_int = max(0, math.floor(min(m_star, 2.0 ** 62)))
    return OptimalParams(n_star=n_star, m_star=m_star, n_int=n_int, m_int=m_int,
                         feasible=(n_int >= 1 and m_int >= 1))


def decoherence_equation(alpha_l, hw, literal_log2_reading=False):
    """Build the transcendental equation for v0.

    f(v) = -alpha*L * [exp(alpha*L/v) * log(lambda_mem)/(M*mu) - k] - v**2 * D
    with k = log2(2*lambda_t), or lambda_t when literal_log2_reading reads
    the term as log2(2) * lambda_t.  f is decreasing in v for D > 0.

    :return: (f, scale) where scale(v) is the magnitude v**2 * D that the
        residual is relative to.
    """
    d = optimal_denominator(hw)
    k = hw.lambda_t if literal_log2_reading else 1.0 + _log2_lambda_t(hw)
    log_mem = math.log(hw.lambda_mem)
    mm = hw.channels * hw.mu

    def f(v):
        lhs = alpha_l * k
        if log_mem != 0.0:
            x = alpha_l / v
            decay = math.exp(x) if x < 700.0 else math.inf
            lhs -= alpha_l * decay * log_mem / mm
        return lhs - v * v * d

    def scale(v):
        return v * v * d

    return f, scale


def decoherence_exponent(alpha_l, hw, v):
    """The exponent of the decoherence bound at root v."""
    l2 = _log2_lambda_t(hw)
    mm = hw.channels * hw.mu
    e = -alpha_l * l2 * (1.0 / v - 1.0) - alpha_l / v
    e += v * (math.log(hw.q * LOSS_FACTOR) - l2 * math.log(mm))
    log_mem = math.log(hw.lambda_mem)
    if log_mem != 0.0:
        x = alpha_l / v
        e += (math.exp(x) if x < 700.0 else math.inf) * log_mem / mm
    return e


def decoherence_lower_bound(ch, hw, length_km=None, literal_log2_reading=False):
    """Lower bound on the optimized rate with lossy switches and worst-case
    memory decoherence, where the swap success becomes
    q * lambda_t**log2(m) * lambda_mem**m.

    :param literal_log2_reading: Read the switch term of the v0 equation as
        log2(2)*lambda_t instead of log2(2*lambda_t).
    :return: The :class:`DecoherenceBoundSolution`.
    :raise BoundInapplicableError: If L <= 0 or the denominator D <= 0.
    :raise RootNotFoundError: If no v0 is found.
    """
    alpha_l = _alpha_l(ch, length_km)
    if alpha_l <= 0.0:
        raise BoundInapplicableError('decoherence bound requires L > 0')
    d = optimal_denominator(hw)
    if d <= 0.0:
        raise BoundInapplicableError(f'optimal parameter denominator {d!r} <= 0')
    f, scale = decoherence_equation(alpha_l, hw, literal_log2_reading)
    k = hw.lambda_t if literal_log2_reading else 1.0 + _log2_lambda_t(hw)
    v_guess = math.sqrt(alpha_l * max(k, 1e-12) / d)
    lo = max(v_guess / 4.0, alpha_l / 700.0, 1e-12)
    result = find_root(f, lo, lo * V_SCAN_SPAN, scale=scale, name='v0')
    v0 = result.root
    prefactor = lossy_constants(hw).prefactor
    rate = prefactor * math.exp(decoherence_exponent(alpha_l, hw, v0))
    return DecoherenceBoundSolution(v0=v0, rate_lb=rate, residual=result.residual)


def spatial_equation(hw):
    """Build the exponent equation for z with m = 1.

    g(z) = F*log(q*F) - mu*M*z*log(z)*(1 - mu*z)**(M-1) with
    F = 1 - (1 - mu*z)**M.

    :return: (g, rhs, success) where rhs(z) is the right-hand side that
        the residual is relative to and success(z) is F.
    """
    mu = hw.mu
    big_m = hw.channels
    q = hw.q

    def success(z):
        return -math.expm1(big_m * math.log1p(-mu * z))

    def rhs(z):
        return mu * big_m * z * math.log(z) * math.exp((big_m - 1) * math.log1p(-mu * z))

    def g(z):
        f = success(z)
        return f * math.log(q * f) - rhs(z)

    return g, rhs, success


def spatial_exponent_exact(hw):
    """Compute the rate exponents without time multiplexing.

    :return: The :class:`SpatialExponents`.  u_ub is None when mu*M <= 1.
    :raise BoundInapplicableError: If q or mu is zero.
    :raise RootNotFoundError: If the z equation has no root in (0, 1),
        which happens when q*mu*M <= 1.
    """
    _require_lossy_hardware(hw)
    g, rhs, success = spatial_equation(hw)
    result = find_root(g, Z_DOMAIN[0], Z_DOMAIN[1], scale=rhs, name='z')
    z = result.root
    s = math.log(hw.q * success(z)) / math.log(z)
    mm = hw.mu * hw.channels
    if mm <= 1.0:
        log.info('mu*M = %r <= 1, spatial upper-bound exponent undefined', mm)
        u = None
    else:
        u = math.log(1.0 / hw.q) / math.log(mm)
    return SpatialExponents(s_exact=s, z_root=z, u_ub=u, residual=result.residual)


def spatial_only_rate(ch, hw, length_km=None):
    """The rate law (1/(q*tau)) * exp(-s * alpha*L) with m = 1."""
    alpha_l = _alpha_l(ch, length_km)
    s = spatial_exponent_exact(hw).s_exact
    return math.exp(-s * alpha_l) / (hw.q * hw.tau_s)


def spatial_only_upper_bound(ch, hw, length_km=None):
    """The bound (1/(q*tau)) * exp(-u * alpha*L) with m = 1.

    :raise BoundInapplicableError: If mu*M <= 1.
    """
    _require_lossy_hardware(hw)
    alpha_l = _alpha_l(ch, length_km)
    mm = hw.mu * hw.channels
    if mm <= 1.0:
        raise BoundInapplicableError(f'mu*M = {mm!r} <= 1')
    u = math.log(1.0 / hw.q) / math.log(mm)
    return math.exp(-u * alpha_l) / (hw.q * hw.tau_s)


def family_point_A(hw, m, n):
    """The corner point of the rate curve R_{m,n} on the x = exp(-alpha*L) axis.

    :return: (x, rate) = ((M*m*mu)**-(n+1), q**n / (m*tau)).
    """
    x = (hw.channels * m * hw.mu) ** -(n + 1)
    return x, hw.q ** n / (m * hw.tau_s)


def family_point_Bprime(hw, m, n):
    """The point of family A lowered by (1 - 1/e)**(n+1).

    The exact rate at x = (M*m*mu)**-(n+1) is never below this ordinate.
    """
    x = (hw.channels * m * hw.mu) ** -(n + 1)
    return x, hw.q ** n * LOSS_FACTOR ** (n + 1) / (m * hw.tau_s)


def bound_summary(ch, hw, length_km=None, literal_log2_reading=False):
    """Evaluate every bound at one length.

    Bounds that do not apply are NaN and the optimal parameters of an
    inapplicable lossy bound report feasible=False.

    :return: The dict with keys ub, lb, lossy_lb, decoh_lb, plob, feasible,
        n_star and m_star.
    """
    length_km = ch.length_km if length_km is None else length_km
    ch = ch.with_length(length_km)
    result = {
        'ub': math.nan,
        'lb': math.nan,
        'lossy_lb': math.nan,
        'decoh_lb': math.nan,
        'plob': plob_rate(ch, hw),
        'feasible': False,
        'n_star': math.nan,
        'm_star': math.nan,
    }
    try:
        result['ub'] = subexp_upper_bound(ch, hw)
        result['lb'] = subexp_lower_bound(ch, hw)
    except BoundInapplicableError as ex:
        log.debug('subexponential bounds: %s', ex)
    try:
        result['lossy_lb'] = lossy_lower_bound(ch, hw)[0]
    except BoundInapplicableError as ex:
        log.debug('lossy bound: %s', ex)
    try:
        result['decoh_lb'] = decoherence_lower_bound(
            ch, hw, literal_log2_reading=literal_log2_reading).rate_lb
    except (BoundInapplicableError, RootNotFoundError) as ex:
        log.debug('decoherence bound: %s', ex)
    try:
        p = optimal_params(ch, hw)
        result['feasible'] = p.feasible
        result['n_star'] = p.n_star
        result['m_star'] = p.m_star
    except BoundInapplicableError as ex:
        log.debug('optimal params: %s', ex)
    return result
