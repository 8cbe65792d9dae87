#!/usr/bin/env python3
"""
Differential equations for moment generating functions.

For L~(lambda, theta) F = 0 on a path from alpha to beta, the moments
b(t) = sum_n t^n int lambda^n F satisfy L~(1/t, -theta-1) b = h with

    h = [L~(1/t, -theta-1) b]_-  -  H_beta  +  H_alpha,
    H_lambda(t) = lambda sum_{j<N} (theta^j F)(lambda) [L~^(j+1)(1/t, -theta-1) 1/(1 - lambda t)]_+

At singular endpoints theta^j F may diverge. Two limit patterns are
supported: a simple pole (lambda - beta) theta^j F -> r, and a milder
(logarithmic) divergence whose bracket vanishes at the endpoint.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..errors import UnsupportedLimitError
from .ratfunc import RatFunc, lam, t
from .theta import reflected

logger = logging.getLogger(__name__)

ENDPOINT_KINDS = ('value', 'pole', 'log')


@dataclass(frozen=True)
class EndpointDatum:
    """Behaviour of theta^j F at an endpoint.

    kind 'value': finite value; 'pole': residue lim (lambda - point) theta^j F;
    'log': divergence weaker than a pole (value unused).
    """
    kind: str
    value: object = 0

    def __post_init__(self):
        if self.kind not in ENDPOINT_KINDS:
            raise ValueError(f"Unknown endpoint kind '{self.kind}' (expected one of {ENDPOINT_KINDS})")
        object.__setattr__(self, 'value', sympy.sympify(self.value))

    @classmethod
    def finite(cls, value):
        return cls('value', value)

    @classmethod
    def pole(cls, residue):
        return cls('pole', residue)

    @classmethod
    def log(cls):
        return cls('log')


def laurent_plus(op, k):
    """[L~^(k)(1/t, -theta-1) 1/(1 - lambda t)]_+ as a RatFunc in t over Q[lambda]."""
    section = reflected(op.section(k))
    applied = section.apply_expr(1 / (1 - lam * t), t)
    return RatFunc.of(applied, t).plus_part()


def brackets(op):
    """laurent_plus for k = 1..N, indexed by j = k - 1."""
    return [laurent_plus(op, j + 1) for j in range(op.theta_degree)]


def endpoint_H(op, point, data, parts=None):
    """H_point(t), taking limits lambda -> point where the data call for it."""
    n = op.theta_degree
    if len(data) != n:
        raise ValueError(f"Endpoint data has {len(data)} entries; operator has theta degree {n}")
    parts = parts or brackets(op)
    point = sympy.sympify(str(point)) if isinstance(point, Fraction) else sympy.sympify(point)
    total = sympy.Integer(0)
    for j, (datum, bracket) in enumerate(zip(data, parts)):
        weighted = lam * bracket.expr
        at_point = sympy.simplify(weighted.subs(lam, point))
        if datum.kind == 'value':
            total += datum.value * at_point
            continue
        if at_point != 0:
            raise UnsupportedLimitError(
                f"theta^{j} F diverges at lambda = {point} but its bracket does not vanish there")
        if datum.kind == 'pole':
            total += datum.value * sympy.diff(weighted, lam).subs(lam, point)
        logger.debug("H at %s: term %d uses %s limit", point, j, datum.kind)
    return RatFunc.of(total, t)


def minus_part(op, moments):
    """[L~(1/t, -theta-1) b]_- from the first M moments b_0..b_(M-1)."""
    m = op.x_degree
    if len(moments) < m:
        raise ValueError(f"minus_part needs {m} moments, got {len(moments)}")
    total = sympy.Integer(0)
    for (i, j), c in op.terms:
        for n in range(i):
            coeff = sympy.Rational(c.numerator, c.denominator) * sympy.Integer(-n - 1) ** j
            total += coeff * sympy.sympify(moments[n]) * t ** (n - i)
    return RatFunc.of(total, t)


@dataclass(frozen=True)
class MomentRHS:
    H_alpha: RatFunc
    H_beta: RatFunc
    h: RatFunc

    def to_json(self):
        return {'H_alpha': str(self.H_alpha), 'H_beta': str(self.H_beta), 'h': str(self.h)}


def moment_rhs(op, alpha, beta, data_alpha, data_beta, minus):
    """H_alpha, H_beta and h = minus - H_beta + H_alpha."""
    n = op.theta_degree
    for name, data in (('alpha', data_alpha), ('beta', data_beta)):
        if len(data) != n:
            raise ValueError(f"Endpoint data at {name} has {len(data)} entries; expected {n}")
    parts = brackets(op)
    H_alpha = endpoint_H(op, alpha, data_alpha, parts)
    H_beta = endpoint_H(op, beta, data_beta, parts)
    if not isinstance(minus, RatFunc):
        minus = RatFunc.of(minus, t)
    return MomentRHS(H_alpha, H_beta, minus - H_beta + H_alpha)


def residue_at_infinity(H):
    """lim_{t -> oo} t H(t): the minus-part coefficient that makes h = O(1/t^2) at infinity."""
    return sympy.simplify(sympy.limit(t * H.expr, t, sympy.oo))


def moment_series(F, alpha, beta, order):
    """Brute force: sum_n t^n int_alpha^beta lambda^n F for a polynomial F (sympy expr in lambda)."""
    coeffs = [sympy.integrate(lam ** n * F, (lam, alpha, beta)) for n in range(order + 1)]
    return coeffs
