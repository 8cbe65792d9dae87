"""
Brute-force oracles: constant-term sequences and direct torus sampling.
"""

from .laurent import LaurentPolyMulti, constant_terms, constant_terms_multinomial
from .sampling import DirectEstimate, mahler_direct

__all__ = ['LaurentPolyMulti', 'constant_terms', 'constant_terms_multinomial',
           'DirectEstimate', 'mahler_direct']
