#!/usr/bin/env python3
"""
Mahler measure of 1+x1+...+x4: q-series, modular forms, Picard-Fuchs
operators and high-precision L-value numerics, plus a verification CLI.
"""

__version__ = '1.0.0'
