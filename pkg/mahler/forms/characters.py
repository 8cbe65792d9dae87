#!/usr/bin/env python3
"""
Dirichlet characters stored as period tables.
"""

from dataclasses import dataclass
from math import gcd

from sympy import jacobi_symbol


def kronecker_symbol(d, n):
    """Kronecker symbol (d/n) for n >= 1."""
    if n < 1:
        raise ValueError(f"kronecker_symbol needs n >= 1, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    if n == 1:
        return result
    if gcd(d, n) > 1:
        return 0
    return result * jacobi_symbol(d % n, n)


@dataclass(frozen=True)
class DirichletChar:
    modulus: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError(f"Character table has {len(self.values)} entries for modulus {self.modulus}")

    def __call__(self, n):
        return self.values[n % self.modulus]

    @classmethod
    def kronecker(cls, d):
        """The character n -> (d/n) for a fundamental discriminant d."""
        m = abs(d)
        values = [0] + [kronecker_symbol(d, n) for n in range(1, m)]
        return cls(m, tuple(values))

    @classmethod
    def trivial(cls):
        return cls(1, (1,))

    @property
    def is_trivial(self):
        return self.modulus == 1

    def is_odd(self):
        return self(self.modulus - 1) == -1


CHI_M3 = DirichletChar.kronecker(-3)
CHI_M15 = DirichletChar.kronecker(-15)
TRIVIAL = DirichletChar.trivial()
