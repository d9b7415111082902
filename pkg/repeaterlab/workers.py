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
Worker threads for sweeps and simulation chunks.

Results are always returned in input order, so the output never depends
on the number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import os


log = logging.getLogger(__name__)

THREADS_ENV = 'REPEATERLAB_THREADS'


def worker_count(requested=None):
    """Get the number of worker threads to use.

    :param requested: The requested count, or None for the CPU count.
    :return: The count, capped by the REPEATERLAB_THREADS environment
        variable when it is set, and never below 1.
    """
    count = (os.cpu_count() or 1) if requested is None else int(requested)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            count = min(count, int(cap))
        except ValueError:
            log.warning('ignoring invalid %s=%r', THREADS_ENV, cap)
    return max(1, count)


def map_ordered(fn, items, workers=None):
    """Apply fn to each item, possibly in parallel.

    :param fn: The callable fn(item).
    :param items: The iterable of items.
    :param workers: The requested worker count, see :func:`worker_count`.
    :return: The list of fn(item) in the order of items.
    """
    items = list(items)
    workers = min(worker_count(workers), max(1, len(items)))
    log.debug('map %d items on %d workers', len(items), workers)
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
