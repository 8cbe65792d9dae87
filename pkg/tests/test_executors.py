"""
tests/test_executors.py
Serial and process-pool executors return results in input order.
"""

import pytest

from mahler.executors import PoolExecutor, SerialExecutor, get_executor


def _square(x):
    return x * x


class TestExecutors:

    def test_serial_order(self):
        with SerialExecutor() as executor:
            assert executor.map(_square, range(6)) == [0, 1, 4, 9, 16, 25]

    def test_pool_order(self):
        with PoolExecutor(max_workers=2) as executor:
            assert executor.map(_square, range(20)) == [x * x for x in range(20)]

    def test_pool_single_item_runs_inline(self):
        executor = PoolExecutor(max_workers=2)
        assert executor.map(_square, [3]) == [9]
        assert executor._pool is None

    def test_factory(self):
        assert isinstance(get_executor({}), SerialExecutor)
        pool = get_executor({'executor': {'kind': 'process', 'max_workers': 3}})
        assert isinstance(pool, PoolExecutor)
        assert pool.max_workers == 3

    def test_unknown_kind_exits(self):
        with pytest.raises(SystemExit):
            get_executor({'executor': {'kind': 'threads'}})
