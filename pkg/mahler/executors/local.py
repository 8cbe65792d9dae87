#!/usr/bin/env python3
"""
In-process executor.
"""

import logging

from .base import BaseExecutor

logger = logging.getLogger(__name__)


class SerialExecutor(BaseExecutor):
    """Runs every task in the calling process, in order."""

    name = 'serial'

    def map(self, fn, items):
        items = list(items)
        logger.debug("serial map over %d items", len(items))
        return [fn(item) for item in items]
