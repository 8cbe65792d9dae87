#!/usr/bin/env python3
"""
Base executor interface for independent checks and sampling batches.
"""


class BaseExecutor:
    """Interface for executors (in-process or process pool)."""

    name = 'base'

    def map(self, fn, items):
        """
        Apply fn to every item.

        Args:
            fn: Picklable callable (module-level function or functools.partial)
            items: Iterable of arguments

        Returns:
            List of results in input order
        """
        raise NotImplementedError("Subclasses must implement map()")

    def shutdown(self):
        """Release worker resources (no-op by default)."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.shutdown()
        return False
