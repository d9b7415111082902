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
Scalar root finding for the transcendental bound equations.

Roots are located by a geometric scan that expands the bracket upward,
and then refined by bisection.  All solves are scalar, so bisection is
fast enough and never leaves the bracket.
"""

from dataclasses import dataclass
import logging
import math


log = logging.getLogger(__name__)

EXPANSION_FACTOR = 2.0
EXPANSIONS_MAX = 60
RTOL = 1e-12
ITERATIONS_MAX = 200
RESIDUAL_RTOL = 1e-10


class RootNotFoundError(RuntimeError):
    """No sign change was found.

    :param message: The description.
    :param bracket: The (lo, hi) interval that was scanned.
    :param samples: The list of (x, f(x)) pairs evaluated during the scan.
    """

    def __init__(self, message, bracket=None, samples=None):
        self.bracket = bracket
        self.samples = [] if samples is None else samples
        if bracket is not None:
            message = f'{message}: scanned [{bracket[0]!r}, {bracket[1]!r}]'
            if self.samples:
                x0, f0 = self.samples[0]
                x1, f1 = self.samples[-1]
                message += f', f({x0:.6g})={f0:.6g}, f({x1:.6g})={f1:.6g}'
        super().__init__(message)


@dataclass(frozen=True)
class RootResult:
    """A refined root.

    :param root: The root location.
    :param residual: |f(root)| divided by the caller's scale.
    :param iterations: The number of bisection steps.
    :param sign_changes: The number of sign changes seen by the scan.
    """
    root: float
    residual: float
    iterations: int
    sign_changes: int


def _sign(value):
    if value > 0.0:
        return 1
    if value < 0.0:
        return -1
    return 0


def scan_brackets(func, lo, hi, factor=None, expansions_max=None):
    """Scan geometrically upward from lo for sign changes of func.

    :param func: The callable f(x).  May return +/-inf, but not NaN.
    :param lo: The positive scan start.
    :param hi: The scan limit.  The final sample is clipped to hi.
    :param factor: The expansion factor, default 2.
    :param expansions_max: The maximum number of expansions, default 60.
    :return: (brackets, samples) where brackets is the ordered list of
        (a, b, f(a), f(b)) intervals containing a sign change and
        samples lists every (x, f(x)) evaluated.
    """
    factor = EXPANSION_FACTOR if factor is None else factor
    expansions_max = EXPANSIONS_MAX if expansions_max is None else expansions_max
    if not 0.0 < lo < hi:
        raise ValueError(f'invalid scan interval [{lo!r}, {hi!r}]')
    x = lo
    f = func(x)
    samples = [(x, f)]
    brackets = []
    for _ in range(expansions_max):
        if x >= hi:
            break
        x_next = min(x * factor, hi)
        f_next = func(x_next)
        samples.append((x_next, f_next))
        if math.isnan(f) or math.isnan(f_next):
            log.debug('NaN in scan at x=%r', x_next)
        elif _sign(f) == 0:
            brackets.append((x, x, f, f))
        elif _sign(f) * _sign(f_next) < 0:
            brackets.append((x, x_next, f, f_next))
        x, f = x_next, f_next
    if _sign(f) == 0 and not (brackets and brackets[-1][1] == x):
        brackets.append((x, x, f, f))
    return brackets, samples


def bisect(func, lo, hi, f_lo=None, f_hi=None, rtol=None, iterations_max=None):
    """Refine a bracketed root by bisection.

    :param func: The callable f(x).
    :param lo: The lower bracket end.
    :param hi: The upper bracket end.
    :param f_lo: The optional known f(lo).
    :param f_hi: The optional known f(hi).
    :param rtol: The relative bracket width at which to stop, default 1e-12.
    :param iterations_max: The iteration cap, default 200.
    :return: (root, iterations).
    :raise RootNotFoundError: If f(lo) and f(hi) have the same sign.
    """
    rtol = RTOL if rtol is None else rtol
    iterations_max = ITERATIONS_MAX if iterations_max is None else iterations_max
    f_lo = func(lo) if f_lo is None else f_lo
    f_hi = func(hi) if f_hi is None else f_hi
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if _sign(f_lo) * _sign(f_hi) >= 0:
        raise RootNotFoundError('root must be bracketed', (lo, hi), [(lo, f_lo), (hi, f_hi)])
    iteration = 0
    for iteration in range(1, iterations_max + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid, iteration
        if _sign(f_mid) == _sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if (hi - lo) <= rtol * abs(mid):
            break
    else:
        log.warning('bisection hit the %d iteration cap on [%r, %r]', iterations_max, lo, hi)
    root = lo if abs(f_lo) <= abs(f_hi) else hi
    return root, iteration


def find_root(func, lo, hi, scale=None, name=None):
    """Find the smallest root of func in [lo, hi].

    :param func: The callable f(x).
    :param lo: The positive scan start.
    :param hi: The scan limit.
    :param scale: The optional callable giving the magnitude that the
        residual is relative to.  None uses the absolute residual.
    :param name: The equation name for log messages.
    :return: The :class:`RootResult`.
    :raise RootNotFoundError: If the scan finds no sign change.
    """
    name = 'equation' if name is None else name
    brackets, samples = scan_brackets(func, lo, hi)
    if not brackets:
        raise RootNotFoundError(f'{name}: no sign change', (lo, samples[-1][0]), samples)
    if len(brackets) > 1:
        log.warning('%s: %d sign changes found, using the smallest root', name, len(brackets))
    a, b, f_a, f_b = brackets[0]
    if a == b:
        root, iterations = a, 0
    else:
        root, iterations = bisect(func, a, b, f_a, f_b)
    f_root = func(root)
    residual = abs(f_root)
    if scale is not None:
        s = abs(scale(root))
        if s > 0.0:
            residual /= s
    if residual > RESIDUAL_RTOL:
        log.warning('%s: relative residual %.3g at root %r exceeds %g',
                    name, residual, root, RESIDUAL_RTOL)
    log.debug('%s: root %r after %d iterations', name, root, iterations)
    return RootResult(root=root, residual=residual, iterations=iterations,
                      sign_changes=len(brackets))
