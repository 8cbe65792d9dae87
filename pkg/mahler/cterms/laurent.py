#!/usr/bin/env python3
"""
Sparse Laurent polynomials in several variables and constant-term sequences.

P_n = (1 + x_1 + ... + x_n)(1 + 1/x_1 + ... + 1/x_n); the constant terms of
its powers form the principal period a(t) = sum_m CT(P_n^m) t^m.
"""

import logging
from dataclasses import dataclass, field
from math import factorial

logger = logging.getLogger(__name__)

MAX_POWER = 12


@dataclass
class LaurentPolyMulti:
    """Sum of coefficient * x^e over exponent vectors e of length n."""
    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        for exps in self.terms:
            if len(exps) != self.n:
                raise ValueError(f"Exponent vector {exps} has length {len(exps)}; expected {self.n}")
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def one(cls, n):
        return cls(n, {(0,) * n: 1})

    @classmethod
    def linear(cls, n, sign=1):
        """1 + x_1^sign + ... + x_n^sign."""
        terms = {(0,) * n: 1}
        for k in range(n):
            exps = [0] * n
            exps[k] = sign
            terms[tuple(exps)] = 1
        return cls(n, terms)

    @classmethod
    def mahler_poly(cls, n):
        return cls.linear(n, 1) * cls.linear(n, -1)

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError(f"Cannot multiply polynomials in {self.n} and {other.n} variables")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolyMulti(self.n, out)

    def constant_term(self):
        return self.terms.get((0,) * self.n, 0)

    def evaluate(self, point):
        total = 0
        for exps, c in self.terms.items():
            value = c
            for x, e in zip(point, exps):
                value *= x ** e
            total += value
        return total

    def __len__(self):
        return len(self.terms)


def _check_range(n, M):
    if not 2 <= n <= 4:
        raise ValueError(f"n must be between 2 and 4, got {n}")
    if not 0 <= M <= MAX_POWER:
        raise ValueError(f"M must be between 0 and {MAX_POWER}, got {M}")


def constant_terms(n, M):
    """[CT(P_n^m) for m = 0..M] by repeated sparse multiplication."""
    _check_range(n, M)
    p = LaurentPolyMulti.mahler_poly(n)
    power = LaurentPolyMulti.one(n)
    out = [power.constant_term()]
    for m in range(1, M + 1):
        power = power * p
        out.append(power.constant_term())
        logger.debug("P_%d^%d: %d terms", n, m, len(power))
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def constant_terms_multinomial(n, M):
    """Same sequence from CT(P_n^m) = sum over k_0+...+k_n = m of (m!/(k_0!...k_n!))^2."""
    _check_range(n, M)
    out = []
    for m in range(M + 1):
        total = 0
        for ks in _compositions(m, n + 1):
            coeff = factorial(m)
            for k in ks:
                coeff //= factorial(k)
            total += coeff * coeff
        out.append(total)
    return out
