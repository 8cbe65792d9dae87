"""
tests/test_series.py
Truncated q-series: exact arithmetic, composition, D and its inverse, rendering.
"""

from fractions import Fraction

import mpmath
import pytest

from mahler.errors import SeriesDomainError, TruncationError
from mahler.series import (
    D, D_inv, D_inv_power, LogSeries, QSeries, alternate_signs, arith, format_series, substitute,
)


def _random_series(rng, order, lead=0):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(order + 1)]
    return QSeries.from_coeffs(coeffs, lead_exp=lead)


class TestConstruction:
    """Shape, precision and coefficient access."""

    def test_prec_exp(self):
        s = QSeries.from_coeffs([1, 2, 3], lead_exp=2)
        assert s.prec_exp == 5
        assert s.coeff(3) == 2

    def test_coeff_beyond_precision_raises(self):
        s = QSeries.from_coeffs([1, 2, 3])
        with pytest.raises(TruncationError):
            s.coeff(3)

    def test_normalized_moves_leading_zeros(self):
        s = QSeries.from_coeffs([0, 0, 5, 1]).normalized()
        assert s.lead_exp == 2
        assert s.prec_exp == 4

    def test_dict_codec(self):
        s = QSeries.from_coeffs([Fraction(1, 3), -2, 0, 7], lead_exp=Fraction(1, 24))
        assert QSeries.from_dict(s.to_dict()) == s


class TestArithmetic:
    """Ring axioms hold exactly on random series."""

    def test_geometric_inverse(self):
        one_minus_q = QSeries.from_coeffs([1, -1, 0, 0, 0, 0])
        inv = 1 / one_minus_q
        assert [inv.coeff(k) for k in range(6)] == [1] * 6

    def test_associativity_and_distributivity(self, rng):
        for _ in range(5):
            a, b, c = (_random_series(rng, 64) for _ in range(3))
            assert ((a * b) * c).agrees_with(a * (b * c))
            assert (a * (b + c)).agrees_with(a * b + a * c)

    def test_division_inverts_multiplication(self, rng):
        a = _random_series(rng, 40)
        b = _random_series(rng, 40)
        if b.coeff(0) == 0:
            b = b + 1
        assert ((a * b) / b).agrees_with(a)

    def test_product_precision_is_the_smaller(self):
        a = QSeries.from_coeffs([1, 1, 1, 1, 1])
        b = QSeries.from_coeffs([1, 1, 1])
        assert (a * b).prec_exp == 3

    def test_leads_add_under_multiplication(self):
        a = QSeries.from_coeffs([1, 1], lead_exp=Fraction(1, 24))
        b = QSeries.from_coeffs([2, 0], lead_exp=Fraction(23, 24))
        assert (a * b).lead_exp == 1

    def test_integer_power(self):
        a = QSeries.from_coeffs([1, 1, 0, 0, 0])
        assert [(a ** 3).coeff(k) for k in range(5)] == [1, 3, 3, 1, 0]

    def test_division_by_truncated_zero(self):
        zero = QSeries.zero(5)
        with pytest.raises(SeriesDomainError):
            arith(QSeries.constant(1, 5), zero, 'div')

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            arith(QSeries.constant(1, 3), QSeries.constant(1, 3), 'mod')

    def test_float_backend_agrees_with_exact(self, rng):
        a = _random_series(rng, 30)
        b = _random_series(rng, 30)
        exact = a * b
        with mpmath.workprec(200):
            approx = a.to_float(200) * b.to_float(200)
            for e, c in exact.items():
                error = abs(approx.coeff(e) - mpmath.mpf(c.numerator) / c.denominator)
                assert error <= mpmath.ldexp(1, -170) * (1 + abs(float(c)))


class TestComposition:
    """substitute, alternate_signs and rescale."""

    def test_substitute_geometric(self):
        outer = QSeries.from_coeffs([1] * 8)          # 1/(1-t)
        inner = QSeries.from_coeffs([0, 1, 0, 0, 0, 0, 0, 0])  # t = q
        result = substitute(outer, inner)
        assert [result.coeff(k) for k in range(8)] == [1] * 8

    def test_substitute_needs_vanishing_inner(self):
        with pytest.raises(SeriesDomainError):
            substitute(QSeries.from_coeffs([1, 1, 1]), QSeries.from_coeffs([1, 1, 1]))

    def test_substitute_square(self):
        outer = QSeries.from_coeffs([0, 0, 1, 0, 0, 0])   # t^2
        inner = QSeries.from_coeffs([0, 1, 1, 0, 0, 0])   # q + q^2
        result = substitute(outer, inner)
        assert [result.coeff(k) for k in range(5)] == [0, 0, 1, 2, 1]

    def test_alternate_signs(self):
        s = QSeries.from_coeffs([1, 2, 3, 4], lead_exp=1)
        assert [c for _, c in alternate_signs(s).items()] == [-1, 2, -3, 4]

    def test_alternate_signs_fractional_lead(self):
        with pytest.raises(SeriesDomainError):
            alternate_signs(QSeries.from_coeffs([1, 1], lead_exp=Fraction(1, 3)))

    def test_rescale(self):
        s = QSeries.from_coeffs([1, 2, 3]).rescale(2)
        assert [s.coeff(k) for k in range(6)] == [1, 0, 2, 0, 3, 0]


class TestDerivative:
    """D = q d/dq and its inverse."""

    def test_D_monomials(self):
        s = D(QSeries.from_coeffs([5, 1, 1, 1]))
        assert [s.coeff(k) for k in range(4)] == [0, 1, 2, 3]

    def test_D_inv_then_D(self, rng):
        s = _random_series(rng, 20, lead=1)
        assert D(D_inv(s).series) == s

    def test_D_inv_constant_term_becomes_log(self):
        result = D_inv(QSeries.from_coeffs([3, 2, 6]))
        assert isinstance(result, LogSeries)
        assert result.log_coeff == 3
        assert result.series.coeff(2) == 3

    def test_D_inv_power_rejects_constant_term(self):
        with pytest.raises(SeriesDomainError):
            D_inv_power(QSeries.from_coeffs([1, 1, 1]), 2)

    def test_D_inv_power_divides_by_powers(self):
        s = D_inv_power(QSeries.from_coeffs([0, 1, 8, 27]), 3)
        assert [s.coeff(k) for k in range(4)] == [0, 1, 1, 1]

    def test_log_series_value(self):
        log_series = D_inv(QSeries.from_coeffs([1, 0, 0]))
        z = mpmath.mpc(0, 1)
        # log q at z = i is -2 pi
        assert abs(log_series.evaluate_at(z, 100) + 2 * mpmath.pi) < mpmath.mpf(10) ** -12


class TestEvaluation:

    def test_evaluate_q_polynomial(self):
        s = QSeries.from_coeffs([1, 2, 3])
        assert s.evaluate_q(mpmath.mpf('0.5')) == mpmath.mpf('2.75')

    def test_evaluate_at_matches_evaluate_q(self):
        s = QSeries.from_coeffs([1, -1, 2, 5], lead_exp=1)
        z = mpmath.mpc('0.1', '0.8')
        q = mpmath.exp(2j * mpmath.pi * z)
        assert abs(s.evaluate_at(z) - s.evaluate_q(q)) < mpmath.mpf(10) ** -12


class TestFormatting:

    def test_printed_expansion(self):
        s = QSeries.from_coeffs([13, 316, 2328], lead_exp=1)
        assert format_series(s) == "13q + 316q^2 + 2328q^3"

    def test_signs_and_constant(self):
        s = QSeries.from_coeffs([1, -1, 0, -4])
        assert format_series(s, var='t') == "1 - t - 4t^3"

    def test_upto(self):
        s = QSeries.from_coeffs([0, 1, 2, 3])
        assert format_series(s, upto=2) == "q + 2q^2"

    def test_zero(self):
        assert format_series(QSeries.zero(3)) == "0"


# Printed expansions used as inputs below
F3_HEAD = QSeries.from_coeffs([1, -4, 4, -4])
T3_HEAD = QSeries.from_coeffs([-1, -6, -21], lead_exp=1)
T2_HEAD = QSeries.from_coeffs([1, -4, 10], lead_exp=1)
F2_HEAD = QSeries.from_coeffs([1, 3, 3])
G2W4_HEAD = QSeries.from_coeffs([-1, -7, -6], lead_exp=1)


class TestWorkedExamples:
    """Hand convolutions and compositions of printed expansions."""

    def test_square_of_f3(self):
        square = F3_HEAD * F3_HEAD
        assert [square.coeff(k) for k in range(3)] == [1, -8, 24]

    def test_t2_times_f2(self):
        product = T2_HEAD * F2_HEAD
        assert [product.coeff(k) for k in range(1, 3)] == [1, -1]

    def test_geometric_series_of_t3(self):
        outer = QSeries.from_coeffs([0, 1, 1, 1])      # t/(1-t)
        result = substitute(outer, T3_HEAD)
        assert [result.coeff(k) for k in range(1, 3)] == [-1, -5]

    def test_substitute_identity_and_constant(self):
        assert substitute(QSeries.from_coeffs([0, 1, 0, 0]), T3_HEAD).agrees_with(T3_HEAD)
        one = substitute(QSeries.from_coeffs([1, 0, 0, 0]), T3_HEAD)
        assert [one.coeff(k) for k in range(3)] == [1, 0, 0]

    def test_alternate_signs_twice(self, rng):
        s = _random_series(rng, 12)
        assert alternate_signs(alternate_signs(s)).agrees_with(s)
        assert alternate_signs(QSeries.constant(5, 4)).agrees_with(QSeries.constant(5, 4))

    def test_triple_D_inv_divides_by_cubes(self):
        s = D_inv_power(G2W4_HEAD, 3)
        assert [s.coeff(k) for k in range(1, 4)] == [-1, Fraction(-7, 8), Fraction(-2, 9)]

    def test_product_with_mixed_denominators(self):
        a = QSeries.from_coeffs([Fraction(1, 6), Fraction(1, 4)])
        b = QSeries.from_coeffs([Fraction(2, 3), Fraction(1, 10)])
        assert [(a * b).coeff(k) for k in range(2)] == [Fraction(1, 9), Fraction(11, 60)]
