#!/usr/bin/env python3
"""
Dedekind eta: q-expansions of eta quotients and point evaluation.

Point evaluation reduces tau into the fundamental domain with T and S,
tracking the matrix, and applies the eta multiplier system (Dedekind sums)
once at the end. The reduced point has Im >= sqrt(3)/2, where the
pentagonal series converges like exp(-pi sqrt(3) n^2 / 2).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

import mpmath
import sympy

from ..errors import PrecisionError, SeriesDomainError
from ..series import QSeries

logger = logging.getLogger(__name__)

MIN_PRECISION = 32


@lru_cache(maxsize=None)
def euler_product(order):
    """prod_{n>=1} (1 - q^n) to order q^order via the pentagonal number theorem."""
    coeffs = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e <= order:
                coeffs[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return QSeries.from_coeffs(coeffs)


def eta_expansion(order):
    """q^(1/24) prod (1 - q^n), known to relative order `order`."""
    if order < 1:
        raise SeriesDomainError(f"eta_expansion needs order >= 1, got {order}")
    return euler_product(order).shift(Fraction(1, 24))


@dataclass(frozen=True)
class EtaQuotient:
    """prod_j eta(d_j z)^(k_j) with factors ((d_j, k_j), ...)."""
    factors: tuple

    def __post_init__(self):
        merged = {}
        for d, k in self.factors:
            if d < 1:
                raise ValueError(f"Eta scale must be a positive integer, got {d}")
            merged[d] = merged.get(d, 0) + k
        object.__setattr__(self, 'factors', tuple(sorted((d, k) for d, k in merged.items() if k)))

    @classmethod
    def of(cls, mapping):
        return cls(tuple(mapping.items()))

    @property
    def weight(self):
        return Fraction(sum(k for _, k in self.factors), 2)

    @property
    def lead_exp(self):
        return Fraction(sum(d * k for d, k in self.factors), 24)

    def scaled(self, m):
        """The quotient evaluated at m z."""
        return EtaQuotient(tuple((d * m, k) for d, k in self.factors))

    def to_dict(self):
        return {'factors': [[d, k] for d, k in self.factors]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple((int(d), int(k)) for d, k in data['factors']))


def eta_quotient_expansion(eq, order):
    """Exact expansion of an eta quotient, known to relative order `order`."""
    if order < 1:
        raise SeriesDomainError(f"eta_quotient_expansion needs order >= 1, got {order}")
    result = QSeries.constant(1, order)
    for d, k in eq.factors:
        base = euler_product(order // d).rescale(d).truncate(order)
        result = result * base ** k
    return result.shift(eq.lead_exp)


def dedekind_sum(h, k):
    """s(h, k) = sum_{r=1}^{k-1} (r/k) ((h r / k)) as an exact Fraction."""
    total = Fraction(0)
    for r in range(1, k):
        x = Fraction(h * r, k)
        if x.denominator != 1:
            total += Fraction(r, k) * (x - floor(x) - Fraction(1, 2))
    return total


def eta_multiplier(a, b, c, d):
    """epsilon(M) with eta(M tau) = epsilon * (-i (c tau + d))^(1/2) * eta(tau).

    Requires c > 0, or c == 0 and d == 1 (then the factor is exp(pi i b / 12)).
    """
    if c == 0:
        return mpmath.expjpi(mpmath.mpf(b) / 12)
    return mpmath.expjpi(to_mpf_fraction(Fraction(a + d, 12 * c) - dedekind_sum(d, c)))


def to_mpf_fraction(x):
    return mpmath.mpf(x.numerator) / x.denominator


def reduce_point(tau):
    """Return (tau_r, gamma) with tau_r = gamma tau in the fundamental domain."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10000):
        n = int(mpmath.nint(tau.real))
        if n:
            tau = tau - n
            a, b = a - n * c, b - n * d
        if abs(tau) >= 1:
            return tau, (a, b, c, d)
        tau = -1 / tau
        a, b, c, d = -c, -d, a, b
    raise RuntimeError("eta reduction did not terminate")


def eta_value(tau, precision):
    """Dedekind eta at a point of the upper half-plane to `precision` bits."""
    if precision < MIN_PRECISION:
        raise PrecisionError(f"eta_value needs at least {MIN_PRECISION} bits, got {precision}")
    with mpmath.workprec(precision + 20):
        tau = mpmath.mpc(tau)
        if tau.imag <= 0:
            raise ValueError(f"eta_value needs Im(tau) > 0, got {tau}")
        tau_r, (a, b, c, d) = reduce_point(tau)
        # tau = M tau_r with M = gamma^(-1)
        ma, mb, mc, md = d, -b, -c, a
        if mc < 0 or (mc == 0 and md < 0):
            ma, mb, mc, md = -ma, -mb, -mc, -md
        value = _eta_series(tau_r, precision + 20)
        if mc == 0:
            value = value * eta_multiplier(ma, mb, mc, md)
        else:
            value = value * eta_multiplier(ma, mb, mc, md) * mpmath.sqrt(-1j * (mc * tau_r + md))
    return +value


def _eta_series(tau, prec):
    """q^(1/24) sum_k (-1)^k q^(k(3k-1)/2) for Im(tau) >= sqrt(3)/2."""
    q = mpmath.exp(2j * mpmath.pi * tau)
    eps = mpmath.ldexp(1, -prec)
    total = mpmath.mpc(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        term = q ** e1 + q ** e2
        total += -term if k % 2 else term
        if abs(q) ** e1 < eps:
            break
        k += 1
    return mpmath.exp(2j * mpmath.pi * tau / 24) * total


def eta_quotient_value(eq, tau, precision):
    with mpmath.workprec(precision + 10):
        value = mpmath.mpc(1)
        for d, k in eq.factors:
            value *= eta_value(d * mpmath.mpc(tau), precision + 10) ** k
    return +value


@dataclass(frozen=True)
class FrickeImage:
    """f(-1/(N z)) = (-i)^w z^w * scale * image(z)."""
    image: EtaQuotient
    weight: Fraction
    scale: object

    def factor(self, z):
        """(-i)^w z^w * scale as an mpmath number."""
        w = to_mpf_fraction(self.weight)
        return mpmath.mpc(0, -1) ** w * mpmath.mpc(z) ** w * mpmath.mpf(str(sympy.N(self.scale, mpmath.mp.dps + 5)))


def fricke_image(eq, level):
    """Atkin-Lehner image of an eta quotient under z -> -1/(level z)."""
    image = []
    scale = sympy.Integer(1)
    for d, k in eq.factors:
        if level % d:
            raise ValueError(f"Scale {d} does not divide level {level}")
        dp = level // d
        image.append((dp, k))
        scale *= sympy.Integer(dp) ** sympy.Rational(k, 2)
    return FrickeImage(EtaQuotient(tuple(image)), eq.weight, scale)
