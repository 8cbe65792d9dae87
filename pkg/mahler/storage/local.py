#!/usr/bin/env python3
"""
On-disk cache backend (one JSON file per key).
"""

import json
import logging
import os
from pathlib import Path

from .base import CacheBackend

logger = logging.getLogger(__name__)


class LocalCache(CacheBackend):
    """JSON files under the cache directory."""

    def __init__(self, config):
        self.cache_dir = Path(config.get('directory', './.mahler-cache'))

    def _path(self, key):
        return self.cache_dir / f"{key}.json"

    def get(self, key):
        path = self._path(key)
        if not path.exists():
            logger.debug("cache miss: %s", key)
            return None
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("ignoring unreadable cache entry %s: %s", path, e)
            return None
        logger.debug("cache hit: %s", key)
        return data

    def put(self, key, data):
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        tmp = path.with_suffix('.json.tmp')
        with open(tmp, 'w') as f:
            json.dump(data, f, sort_keys=True)
        # atomic on POSIX; concurrent writers of the same key write identical bytes
        os.replace(tmp, path)
        return str(path)

    def get_metadata(self, key):
        path = self._path(key)
        if path.exists():
            return {
                'storage_mode': 'local',
                'local_path': str(path),
                'exists': True,
                'size': path.stat().st_size
            }
        return {'exists': False}
