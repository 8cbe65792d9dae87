#!/usr/bin/env python3
"""
Executor factory and package exports.
"""

import sys

from .base import BaseExecutor
from .local import SerialExecutor
from .pool import PoolExecutor


def get_executor(config):
    """Select the executor named by config['executor']['kind'] (serial | process)."""
    settings = (config or {}).get('executor', {})
    kind = settings.get('kind', 'serial')
    if kind == 'serial':
        return SerialExecutor()
    elif kind == 'process':
        return PoolExecutor(max_workers=settings.get('max_workers'))
    else:
        print(f"ERROR: Unknown executor '{kind}' (expected 'serial' or 'process')")
        sys.exit(1)


# Package exports
__all__ = ['BaseExecutor', 'SerialExecutor', 'PoolExecutor', 'get_executor']
