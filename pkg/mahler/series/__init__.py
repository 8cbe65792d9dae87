"""
Truncated q-series arithmetic (exact and mpmath-float backends).
"""

from .qseries import (
    QSeries, LogSeries, arith, substitute, alternate_signs,
    D, D_inv, D_inv_power, format_series, to_mpf,
)

__all__ = [
    'QSeries', 'LogSeries', 'arith', 'substitute', 'alternate_signs',
    'D', 'D_inv', 'D_inv_power', 'format_series', 'to_mpf',
]
