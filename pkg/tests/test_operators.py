"""
tests/test_operators.py
Theta-operators, the moment transform, solvers and the named moment problems.
"""

from fractions import Fraction

import pytest
import sympy

from mahler.errors import IndicialError, SeriesDomainError, UnsupportedLimitError
from mahler.operators import (
    L2, L2_DUAL, L3, L3_DUAL, EndpointDatum, OracleCase, RatFunc, ThetaOp, c1_relation, check_case,
    check_parametrization, dual_op, endpoint_H, frobenius_basis, is_mum, lam, laurent_plus, minus_residue_balance,
    moment_case, moment_oracle, planted_case, principal_period, rescaling_holds, solve_nonhomogeneous, t,
    thm1_components, thm1_solution, thm2_solution,
)
from mahler.operators.cases import EXPECTED_H_BETA, EXPECTED_RHS, MOMENTS
from mahler.series import QSeries

x, th = sympy.symbols('x theta')


class TestThetaOp:

    def test_normal_ordering(self):
        """theta x = x (theta + 1)."""
        product = ThetaOp.theta() * ThetaOp.monomial(1)
        assert product == ThetaOp((((1, 0), 1), ((1, 1), 1)))

    def test_from_expr_degrees(self):
        assert (L2.x_degree, L2.theta_degree) == (2, 2)
        assert (L3.x_degree, L3.theta_degree) == (2, 3)

    def test_reflect_twice_is_identity(self):
        assert L3.reflect_theta().reflect_theta() == L3

    @pytest.mark.parametrize('name', ['L2', 'L3'])
    def test_rescaling(self, name):
        assert rescaling_holds(name)

    @pytest.mark.parametrize('dual, target', [(L2_DUAL, L2), (L3_DUAL, L3)])
    def test_dual_identity(self, dual, target):
        op = dual_op(dual).op
        assert op == target or op == -target

    def test_apply_to_series(self):
        """theta - 1 kills q."""
        op = ThetaOp.from_expr(th - 1, x, th)
        result = op.apply(QSeries.from_coeffs([0, 1, 0, 0]))
        assert all(c == 0 for _, c in result.items())


class TestRatFunc:

    def test_laurent_split(self):
        f = RatFunc.of(1 / t + 1 / (1 - t))
        minus, plus = f.laurent_split()
        assert minus == RatFunc.of(1 / t)
        assert plus == RatFunc.of(1 / (1 - t))

    def test_to_series(self):
        s = RatFunc.of(t / (1 - t)).to_series(5)
        assert [s.coeff(k) for k in range(6)] == [0, 1, 1, 1, 1, 1]

    def test_equality_after_normalisation(self):
        assert RatFunc.of((t ** 2 - 1) / (t - 1)) == RatFunc.of(t + 1)


class TestBrackets:
    """Nonnegative Laurent parts of the sections applied to 1/(1 - lambda t)."""

    def test_second_section_of_L2_dual(self):
        expected = (lam - 1) * (lam - 9) / (1 - lam * t)
        assert sympy.simplify(laurent_plus(L2_DUAL, 2).expr - expected) == 0

    def test_first_section_of_L2_dual(self):
        expected = -(lam - 1) * (lam - 9) / (1 - lam * t) ** 2
        assert sympy.simplify(laurent_plus(L2_DUAL, 1).expr - expected) == 0

    def test_third_section_of_L3_dual_at_one(self):
        assert sympy.simplify(laurent_plus(L3_DUAL, 3).expr.subs(lam, 1) - 45 / (1 - t)) == 0


class TestSolvers:

    def test_principal_period_of_L2(self):
        period = principal_period(L2, 4)
        assert [period.coeff(k) for k in range(5)] == [1, 3, 15, 93, 639]

    def test_mum_detection(self):
        assert is_mum(L2) and is_mum(L3)
        assert not is_mum(ThetaOp.from_expr(th * (th - 1) - x, x, th))

    def test_frobenius_basis_solves(self):
        basis = frobenius_basis(L3, order=20)
        assert len(basis) == 3
        assert [s.log_degree for s in basis] == [0, 1, 2]
        for solution in basis:
            for stratum in solution.apply(L3):
                assert all(c == 0 for _, c in stratum.items())

    def test_frobenius_needs_mum(self):
        with pytest.raises(IndicialError):
            frobenius_basis(ThetaOp.from_expr(th * (th - 1) - x, x, th), order=5)

    def test_nonhomogeneous_rejects_constant_rhs(self):
        with pytest.raises(SeriesDomainError):
            solve_nonhomogeneous(L2, QSeries.constant(1, 5), Fraction(0))


class TestMomentCases:
    """The moment transform reproduces the printed right-hand sides."""

    @pytest.mark.parametrize('name', ['thm1', 'thm2'])
    def test_rhs(self, name):
        result = moment_case(name)
        assert result.rhs == EXPECTED_RHS[name]
        assert result.H_beta == EXPECTED_H_BETA[name]

    def test_toy(self):
        result = moment_case('toy')
        assert result.H_beta == EXPECTED_H_BETA['toy']
        assert result.rhs is None

    @pytest.mark.parametrize('name', ['thm1', 'thm2'])
    def test_h_decays_at_infinity(self, name):
        residue, balance = minus_residue_balance(name)
        assert sympy.simplify(residue - balance) == 0

    def test_b0(self):
        assert moment_case('thm1').b0 == sympy.Rational(3, 4)
        assert moment_case('thm2').b0 == sympy.Rational(4, 5)

    def test_c1_relation(self):
        assert sympy.simplify(c1_relation() - MOMENTS['thm2'][1]) == 0

    def test_unknown_case(self):
        with pytest.raises(ValueError):
            moment_case('thm3')

    def test_thm1_solution_first_terms(self):
        b = thm1_solution(10)
        assert sympy.simplify(b.coefficient(0) - sympy.Rational(3, 4)) == 0
        assert sympy.simplify(b.coefficient(1) - (sympy.Rational(9, 4) + 6 / sympy.pi ** 2)) == 0

    def test_thm1_solution_components(self):
        """b = (3/4) phi + (6/pi^2) psi."""
        b = thm1_solution(20)
        phi, psi = thm1_components(20)
        assert b.component(sympy.pi ** -2).agrees_with(psi * 6)
        assert b.component(1).agrees_with(phi * Fraction(3, 4))

    def test_thm2_solution_satisfies_ode(self):
        b = thm2_solution(15)
        rhs = moment_case('thm2').rhs
        for monomial, series in b.terms:
            piece = rhs.split_constants().get(monomial)
            expected = piece.to_series(15) if piece is not None else QSeries.zero(15)
            assert L3.apply(series).agrees_with(expected)


class TestEndpoints:

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            EndpointDatum('jump')

    def test_pole_needs_vanishing_bracket(self):
        with pytest.raises(UnsupportedLimitError):
            endpoint_H(ThetaOp.theta(), 1, (EndpointDatum.pole(1),))


class TestMomentTransformOracle:

    def test_planted_cases_respect_bounds(self, rng):
        for _ in range(200):
            case = planted_case(rng)
            assert case.op.x_degree <= 3 and 1 <= case.op.theta_degree <= 3
            assert all(abs(c) <= 5 for c in sympy.Poly(case.F, lam).coeffs())
            assert sympy.expand(case.op.apply_expr(case.F, lam)) == 0
            assert case.alpha < case.beta

    def test_single_case_agrees(self, rng):
        result = check_case(planted_case(rng), order=12)
        assert result.holds, f"{result.case} at t^{result.first_mismatch}"

    def test_wrong_rhs_is_caught(self):
        """Planting a non-solution breaks the agreement."""
        case = OracleCase(ThetaOp.theta(), 1 + lam, sympy.Integer(0), sympy.Integer(1))
        assert not check_case(case, order=6).holds

    @pytest.mark.slow
    def test_fifty_random_operators(self):
        for result in moment_oracle(cases=50, seed=20240601, order=50):
            assert result.holds, f"{result.case} at t^{result.first_mismatch}"


class TestParametrizations:

    @pytest.mark.parametrize('param, op', [('L2', L2), ('L3', L3)])
    def test_operator_pulls_back(self, registry, param, op):
        result = check_parametrization(param, op, order=60, seed=3, registry=registry)
        assert result.equal, f"first mismatch at q^{result.first_mismatch}"

    def test_wrong_operator_detected(self, registry):
        result = check_parametrization('L2', L3, order=30, seed=3, registry=registry)
        assert not result.equal
