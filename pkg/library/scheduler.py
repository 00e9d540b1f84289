# khavinson-constants - sharp gradient constants for hyperbolic harmonic functions on the unit ball
#
# Copyright (C) 2026  khavinson-constants contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

# Thread helpers for grid commands (tables, sweeps, verification suites) and Monte-Carlo shards.
# Results are always returned in grid order, whatever the number of workers.

import threading
from functools import wraps
from typing import Callable, List, Sequence

import library.config as config
from library.log import logger


def async_job(threadname=None):
    """ wrapper to handle asynchronous threads """

    def decorator(func):
        """ Decorator to extend async_func """

        @wraps(func)
        def async_func(*args, **kwargs):
            """ create an asynchronous function to wrap around our thread """
            func_hl = threading.Thread(target=func, name=threadname, args=args, kwargs=kwargs)
            func_hl.start()
            return func_hl

        return async_func

    return decorator


def split_chunks(count: int, workers: int) -> List[range]:
    """Contiguous index ranges, one per worker, sizes differing by at most one"""
    workers = max(1, min(workers, count))
    size, extra = divmod(count, workers)
    chunks = []
    start = 0
    for i in range(workers):
        stop = start + size + (1 if i < extra else 0)
        chunks.append(range(start, stop))
        start = stop
    return chunks


def run_ordered(func: Callable, cells: Sequence, workers: int = None) -> list:
    """Apply func to every cell, possibly in parallel threads, and return results in cell order"""
    workers = int(workers or config.CONFIG_DATA['config']['WORKERS'])
    if workers <= 1 or len(cells) <= 1:
        return [func(cell) for cell in cells]

    results = [None] * len(cells)
    failures = {}

    @async_job("Grid_Chunk")
    def run_chunk(indices):
        for i in indices:
            try:
                results[i] = func(cells[i])
            except Exception as e:
                failures[i] = e
                return

    chunks = split_chunks(len(cells), workers)
    logger.debug("Running %d cells in %d threads" % (len(cells), len(chunks)))
    threads = [run_chunk(chunk) for chunk in chunks]
    for thread in threads:
        thread.join()

    if failures:
        # Report the first failing cell in grid order, as a sequential run would
        raise failures[min(failures)]
    return results
