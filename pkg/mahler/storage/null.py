#!/usr/bin/env python3
"""
Cache backend that stores nothing.
"""

from .base import CacheBackend


class NullCache(CacheBackend):
    """Every lookup misses; every write is dropped."""

    def get(self, key):
        return None

    def put(self, key, data):
        return None

    def get_metadata(self, key):
        return {'storage_mode': 'none', 'exists': False}
