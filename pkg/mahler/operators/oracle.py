#!/usr/bin/env python3
"""
Randomised cross-check of the moment transform.

Each case plants a polynomial solution: F = sum c_i lambda^i is killed by
F theta - (theta F), and a random left factor R keeps it a solution of
L~ = R (F theta - (theta F)). The brute-force moments of F on [alpha, beta]
must then satisfy L~(1/t, -theta-1) b = h, with h from moment_rhs, exactly
through t^order.
"""

import logging
import random
from dataclasses import dataclass

import sympy

from .moments import EndpointDatum, minus_part, moment_rhs, moment_series
from .ratfunc import lam, t
from .theta import ThetaOp, reflected

logger = logging.getLogger(__name__)

ENDPOINTS = (sympy.Integer(-1), sympy.Integer(0), sympy.Rational(1, 2), sympy.Integer(1), sympy.Integer(2))
MAX_DEGREE = 3
COEFF_BOUND = 5


@dataclass(frozen=True)
class OracleCase:
    op: ThetaOp
    F: object
    alpha: object
    beta: object

    def __str__(self):
        return f"{self.op} with F = {self.F} on [{self.alpha}, {self.beta}]"


@dataclass(frozen=True)
class OracleResult:
    case: OracleCase
    order: int
    first_mismatch: object = None

    @property
    def holds(self):
        return self.first_mismatch is None


def planted_case(rng, max_degree=MAX_DEGREE, bound=COEFF_BOUND):
    """Random case with lambda-degree and theta-degree at most max_degree."""
    f_degree = rng.randint(0, max_degree - 1)
    coeffs = [rng.randint(-bound, bound) for _ in range(f_degree + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = rng.choice([-1, 1]) * rng.randint(1, bound)
    F = sum(c * lam ** i for i, c in enumerate(coeffs))
    annihilator = ThetaOp(tuple(((i, 1), c) for i, c in enumerate(coeffs)) +
                          tuple(((i, 0), -i * c) for i, c in enumerate(coeffs)))

    x_room = max_degree - f_degree
    theta_room = max_degree - 1
    left = ThetaOp(tuple(((i, j), rng.randint(-bound, bound))
                         for i in range(rng.randint(0, x_room) + 1)
                         for j in range(rng.randint(0, theta_room) + 1)))
    if not left.terms:
        left = ThetaOp.monomial(0)
    alpha, beta = sorted(rng.sample(ENDPOINTS, 2))
    return OracleCase(left * annihilator, F, alpha, beta)


def _theta_powers(F, n):
    out = [F]
    for _ in range(n - 1):
        out.append(sympy.expand(lam * sympy.diff(out[-1], lam)))
    return out


def check_case(case, order=50):
    """First power of t where L~(1/t, -theta-1) b and h disagree, or None."""
    op = case.op
    b = moment_series(case.F, case.alpha, case.beta, order)
    powers = _theta_powers(case.F, op.theta_degree)
    data_alpha = tuple(EndpointDatum.finite(p.subs(lam, case.alpha)) for p in powers)
    data_beta = tuple(EndpointDatum.finite(p.subs(lam, case.beta)) for p in powers)
    m = op.x_degree
    result = moment_rhs(op, case.alpha, case.beta, data_alpha, data_beta, minus_part(op, b[:m]))

    lhs = reflected(op).apply_expr(sum(c * t ** n for n, c in enumerate(b)), t)
    # clear the denominator of h; truncating b only disturbs powers above t^order
    residual = sympy.expand((lhs * result.h.den - result.h.num) * t ** m)
    for k in range(order + 1):
        if residual.coeff(t, k) != 0:
            logger.debug("moment transform disagrees at t^%d for %s", k, case)
            return OracleResult(case, order, k)
    return OracleResult(case, order)


def moment_oracle(cases=50, seed=1, order=50, max_degree=MAX_DEGREE):
    """Run `cases` planted problems from one seeded generator."""
    rng = random.Random(seed)
    return [check_case(planted_case(rng, max_degree), order) for _ in range(cases)]
