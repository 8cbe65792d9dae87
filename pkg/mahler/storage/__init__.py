"""
Cache backend abstraction package.

Expansions and numerical values are cached under keys derived from the
recipe hash and the requested order or precision. Backends: local JSON
files, S3 objects, or nothing.
"""

import os
import sys

from .local import LocalCache
from .null import NullCache
from .s3 import S3Cache

CACHE_DIR_ENV = 'MAHLER_CACHE_DIR'


def get_cache_backend(config):
    settings = dict((config or {}).get('cache', {}))
    backend = settings.get('backend', 'local')
    if os.environ.get(CACHE_DIR_ENV):
        settings['directory'] = os.environ[CACHE_DIR_ENV]

    if backend == 'local':
        return LocalCache(settings)
    elif backend == 's3':
        return S3Cache(settings.get('s3', {}))
    elif backend == 'none':
        return NullCache()
    else:
        print(f"ERROR: Unknown cache backend: {backend}")
        sys.exit(1)


__all__ = ['LocalCache', 'NullCache', 'S3Cache', 'get_cache_backend', 'CACHE_DIR_ENV']
