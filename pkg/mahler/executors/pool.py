#!/usr/bin/env python3
"""
Process-pool executor.

Results are returned in input order whatever the completion order, so a
report assembled from them is identical to a serial run.
"""

import concurrent.futures
import logging

from .base import BaseExecutor

logger = logging.getLogger(__name__)


class PoolExecutor(BaseExecutor):
    """concurrent.futures.ProcessPoolExecutor wrapper with an ordered map."""

    name = 'process'

    def __init__(self, max_workers=None):
        self.max_workers = max_workers
        self._pool = None

    def _get_pool(self):
        if self._pool is None:
            self._pool = concurrent.futures.ProcessPoolExecutor(max_workers=self.max_workers)
        return self._pool

    def map(self, fn, items):
        items = list(items)
        if len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug("process map over %d items (max_workers=%s)", len(items), self.max_workers)
        return list(self._get_pool().map(fn, items, chunksize=1))

    def shutdown(self):
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None
