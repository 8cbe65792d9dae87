#!/usr/bin/env python3
"""
Base cache backend interface for expansions and numerical values.
"""


class CacheBackend:
    """Base interface for cache backends. Values are JSON-serialisable dicts."""

    def get(self, key):
        """Return the stored dict for key, or None on a miss."""
        raise NotImplementedError

    def put(self, key, data):
        """Store data under key."""
        raise NotImplementedError

    def get_metadata(self, key):
        """Describe a stored entry ({'exists': False} when absent)."""
        raise NotImplementedError
