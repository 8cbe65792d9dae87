"""
Theta-operators, the moment transform, power-series solvers and modular
parametrization checks.
"""

from .cases import (L2, L2_DUAL, L3, L3_DUAL, L4, OPERATORS, CaseResult, c1_relation,
                    minus_residue_balance, moment_case, principal_period, rescaling_holds,
                    thm1_components, thm1_solution, thm2_solution)
from .moments import (EndpointDatum, MomentRHS, brackets, endpoint_H, laurent_plus, minus_part,
                      moment_rhs, moment_series, residue_at_infinity)
from .oracle import OracleCase, OracleResult, check_case, moment_oracle, planted_case
from .parametrization import ParametrizationCheck, check_parametrization
from .ratfunc import Omega, RatFunc, lam, t
from .solvers import (FrobeniusSolution, SymbolicSeries, frobenius_basis, is_mum,
                      solve_nonhomogeneous, solve_symbolic)
from .theta import DualOp, ThetaOp, dual_op, op_apply, recentered, reflected

__all__ = [
    'L2', 'L2_DUAL', 'L3', 'L3_DUAL', 'L4', 'OPERATORS', 'CaseResult', 'c1_relation',
    'minus_residue_balance', 'moment_case', 'principal_period', 'rescaling_holds',
    'thm1_components', 'thm1_solution', 'thm2_solution',
    'EndpointDatum', 'MomentRHS', 'brackets', 'endpoint_H', 'laurent_plus', 'minus_part',
    'moment_rhs', 'moment_series', 'residue_at_infinity',
    'OracleCase', 'OracleResult', 'check_case', 'moment_oracle', 'planted_case',
    'ParametrizationCheck', 'check_parametrization',
    'Omega', 'RatFunc', 'lam', 't',
    'FrobeniusSolution', 'SymbolicSeries', 'frobenius_basis', 'is_mum',
    'solve_nonhomogeneous', 'solve_symbolic',
    'DualOp', 'ThetaOp', 'dual_op', 'op_apply', 'recentered', 'reflected',
]
