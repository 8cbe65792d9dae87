#!/usr/bin/env python3
"""
The concrete operators and the two moment problems built on them.

L2, L3, L4 annihilate the principal periods of 1 + x_1 + ... + x_n times
its reciprocal; L2~ and L3~ act on lambda = 1/t. The endpoint data below
are the behaviours of a*(lambda) at lambda = 0 and 1, and the first moments
c_0, c_1 of a* on [0, 1] come from the modular integrals in
mahler.analytics.cm.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..series import QSeries
from .moments import EndpointDatum, minus_part, moment_rhs, residue_at_infinity
from .ratfunc import Omega, RatFunc, t
from .solvers import solve_nonhomogeneous, solve_symbolic
from .theta import ThetaOp, dual_op

logger = logging.getLogger(__name__)

x, th = sympy.symbols('x theta')
pi = sympy.pi
SQRT3 = sympy.sqrt(3)
SQRT5 = sympy.sqrt(5)

L2 = ThetaOp.from_expr(th**2 - x*(10*th**2 + 10*th + 3) + 9*x**2*(th + 1)**2, x, th)
L3 = ThetaOp.from_expr(th**3 - 2*x*(2*th + 1)*(5*th**2 + 5*th + 2) + 64*x**2*(th + 1)**3, x, th)
L4 = ThetaOp.from_expr(
    th**4 - x*(35*th**4 + 70*th**3 + 63*th**2 + 28*th + 5)
    + x**2*(th + 1)**2*(259*th**2 + 518*th + 285) - 225*x**3*(th + 1)**2*(th + 2)**2, x, th)
L2_DUAL = ThetaOp.from_expr(9*th**2 - x*(10*th**2 + 10*th + 3) + x**2*(th + 1)**2, x, th)
L3_DUAL = ThetaOp.from_expr(64*th**3 - 2*x*(2*th + 1)*(5*th**2 + 5*th + 2) + x**2*(th + 1)**3, x, th)

OPERATORS = {'L2': L2, 'L3': L3, 'L4': L4, 'L2_dual': L2_DUAL, 'L3_dual': L3_DUAL}

# L~_n((n+1)^2 t, theta) = (n+1)^2 L_n(t, theta)
RESCALINGS = {'L2': (L2_DUAL, 9), 'L3': (L3_DUAL, 64)}

# values of theta^j a*(1) for the L3 case, in terms of the Chowla-Selberg period
A_STAR_1 = 3 * SQRT5 / (2 * pi) * Omega**2
THETA_A_STAR_1 = -3 * SQRT5 / (10 * pi) * Omega**2
THETA2_A_STAR_1 = SQRT5 / 150 * (13 * Omega**2 / pi - 2 / (pi**3 * Omega**2))

# first moments of a* on [0, 1]: c_0 and c_1 - (n+1) c_0
MOMENTS = {
    'thm1': (sympy.Rational(1, 4), -6 / pi**2),
    'thm2': (sympy.Rational(1, 5), -39 * SQRT5 / (10 * pi) * Omega**2 - 3 * SQRT5 / (5 * pi**3 * Omega**2)),
}

EXPECTED_RHS = {
    'toy': None,
    'thm1': RatFunc.of(6 / pi**2 * t / (1 - t)),
    'thm2': RatFunc.of(-3 * SQRT5 * Omega**2 / (10 * pi) * t * (212*t**2 + 251*t - 13) / (1 - t)**3
                       + 3 * SQRT5 / (5 * pi**3 * Omega**2) * t / (1 - t)),
}

EXPECTED_H_BETA = {
    'toy': RatFunc.of(1 / (1 - t)),
    'thm1': RatFunc.of(6 / (pi**2 * (1 - t))),
    'thm2': RatFunc.of(3 * Omega**2 * SQRT5 / (10 * pi) * (-13*t**2 + 251*t + 212) / (1 - t)**3
                       - 3 * SQRT5 / (5 * pi**3 * Omega**2) / (1 - t)),
}


@dataclass(frozen=True)
class MomentCase:
    name: str
    op: ThetaOp
    target: object
    alpha: int
    beta: int
    data_alpha: tuple
    data_beta: tuple
    moments: tuple


def _case(name):
    if name == 'toy':
        return MomentCase('toy', ThetaOp.theta(), None, 0, 1,
                          (EndpointDatum.finite(1),), (EndpointDatum.finite(1),), ())
    if name == 'thm1':
        c0, delta = MOMENTS['thm1']
        return MomentCase(
            'thm1', L2_DUAL, L2, 0, 1,
            (EndpointDatum.finite(1 / (SQRT3 * pi)), EndpointDatum.finite(0)),
            (EndpointDatum.log(), EndpointDatum.pole(-3 / (4 * pi**2))),
            (c0, 3 * c0 + delta))
    if name == 'thm2':
        c0, delta = MOMENTS['thm2']
        return MomentCase(
            'thm2', L3_DUAL, L3, 0, 1,
            (EndpointDatum.log(), EndpointDatum.finite(-3 / (8 * pi**2)), EndpointDatum.finite(0)),
            (EndpointDatum.finite(A_STAR_1), EndpointDatum.finite(THETA_A_STAR_1),
             EndpointDatum.finite(THETA2_A_STAR_1)),
            (c0, 4 * c0 + delta))
    raise ValueError(f"Unknown moment case '{name}' (expected toy, thm1 or thm2)")


@dataclass(frozen=True)
class CaseResult:
    name: str
    H_alpha: RatFunc
    H_beta: RatFunc
    h: RatFunc
    rhs: object
    b0: object

    def to_json(self):
        return {
            'case': self.name,
            'H_alpha': str(self.H_alpha),
            'H_beta': str(self.H_beta),
            'h': str(self.h),
            'rhs': str(self.rhs) if self.rhs is not None else None,
            'b0': str(self.b0) if self.b0 is not None else None,
            'latex': {'H_beta': self.H_beta.latex(), 'h': self.h.latex(),
                      'rhs': self.rhs.latex() if self.rhs is not None else None},
        }


def moment_case(name):
    """Run the moment transform for one case.

    For thm1/thm2 the right-hand side for b = a - c follows from the dual
    identity L~(1/t, -theta-1) = t^power * op_t with L_n = sign * op_t:
    L_n b = -sign * t^(-power) * h.
    """
    case = _case(name)
    minus = minus_part(case.op, case.moments)
    result = moment_rhs(case.op, case.alpha, case.beta, case.data_alpha, case.data_beta, minus)
    if case.target is None:
        return CaseResult(name, result.H_alpha, result.H_beta, result.h, None, None)
    dual = dual_op(case.op)
    sign = _sign_against(dual.op, case.target)
    rhs = RatFunc.of(-sign * t ** (-dual.power) * result.h.expr)
    b0 = 1 - case.moments[0]
    logger.debug("moment case %s: rhs %s, b0 %s", name, rhs, b0)
    return CaseResult(name, result.H_alpha, result.H_beta, result.h, rhs, b0)


def _sign_against(op, target):
    if op == target:
        return 1
    if op == -target:
        return -1
    raise ValueError("Dual operator is not +-1 times the target operator")


def minus_residue_balance(name):
    """(residue of the minus part, lim t H_beta): equal when h = O(1/t^2) at infinity."""
    case = _case(name)
    minus = minus_part(case.op, case.moments)
    result = moment_rhs(case.op, case.alpha, case.beta, case.data_alpha, case.data_beta, minus)
    residue = sympy.simplify(sympy.limit(t * minus.expr, t, sympy.oo))
    return residue, residue_at_infinity(result.H_beta - result.H_alpha)


def c1_relation():
    """c_1 - 4 c_0 for the L3 case from theta^j a*(1): -7 a* - 9 theta a* + 45 theta^2 a*."""
    return sympy.simplify(-7 * A_STAR_1 - 9 * THETA_A_STAR_1 + 45 * THETA2_A_STAR_1)


def principal_period(op, order):
    """The solution 1 + O(t) of op y = 0."""
    return solve_nonhomogeneous(op, QSeries.zero(order), Fraction(1), order)


def thm1_solution(order=60):
    """b with L2 b = (6/pi^2) t/(1-t), b_0 = 3/4, as a SymbolicSeries."""
    case = moment_case('thm1')
    return solve_symbolic(L2, case.rhs, case.b0, order)


def thm1_components(order=60):
    """(phi, psi): L2 phi = 0 with phi_0 = 1; L2 psi = t/(1-t) with psi_0 = 0."""
    phi = principal_period(L2, order)
    psi = solve_nonhomogeneous(L2, RatFunc.of(t / (1 - t)).to_series(order), Fraction(0), order)
    return phi, psi


def thm2_solution(order=60):
    """b with the L3 right-hand side and b_0 = 4/5, as a SymbolicSeries."""
    case = moment_case('thm2')
    return solve_symbolic(L3, case.rhs, case.b0, order)


def rescaling_holds(name):
    dual, factor = RESCALINGS[name]
    return dual.rescale(factor) == OPERATORS[name].scale(factor)
