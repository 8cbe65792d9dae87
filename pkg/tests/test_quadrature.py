"""
tests/test_quadrature.py
Quadrature settings, Chebyshev panels and q-series tails.
"""

import mpmath
import pytest

from mahler.analytics import ChebyshevGrid, LValueResult, QuadratureSpec, integrate, series_tail_moment
from mahler.analytics.quadrature import check_vanishing_at_zero, tail_bound
from mahler.errors import PrecisionError, SeriesDomainError, UnsupportedLimitError
from mahler.series import QSeries


class TestQuadratureSpec:

    @pytest.mark.parametrize('kwargs', [{'rule': 'simpson'}, {'split_point': 0}, {'ratio': 1.0}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)

    def test_from_config(self, local_config):
        spec = QuadratureSpec.from_config(local_config)
        assert spec.abs_tol == 1e-20
        assert spec.panels == 10
        assert spec.split_point == 0.3

    def test_precision_floor(self):
        QuadratureSpec(abs_tol=1e-30).check_precision(128)
        with pytest.raises(PrecisionError):
            QuadratureSpec(abs_tol=1e-30).check_precision(64)

    def test_refined_is_finer(self):
        spec = QuadratureSpec(degree=16, panels=10)
        refined = spec.refined()
        assert (refined.degree, refined.panels) == (24, 12)
        assert refined.split_point == spec.split_point

    def test_result_method_checked(self):
        with pytest.raises(ValueError):
            LValueResult(mpmath.mpf(1), 0.0, 'guesswork')


class TestIntegration:

    def test_integrate(self):
        value, err = integrate(mpmath.exp, 0, 1, precision=128)
        with mpmath.workprec(128):
            assert abs(value - (mpmath.e - 1)) < mpmath.mpf(10) ** -30

    def test_chebyshev_panels_exact_on_polynomials(self):
        grid = ChebyshevGrid.geometric(1, panels=4, ratio=0.5, degree=8, precision=128)
        with mpmath.workprec(128):
            values = grid.sample(lambda x: x ** 3)
            assert abs(grid.integral(values) - mpmath.mpf(1) / 4) < mpmath.mpf(10) ** -30
            cumulative = grid.cumulative(values)
            # int_0^(1/2) x^3 at the end of the second to last panel
            assert abs(cumulative[-2][-1] - mpmath.mpf(1) / 64) < mpmath.mpf(10) ** -30

    def test_grid_starts_at_zero(self):
        grid = ChebyshevGrid.geometric('0.3', panels=3, ratio=0.5, degree=4, precision=64)
        assert grid.breakpoints[0] == 0
        assert grid.nodes()[0] == 0

    def test_tail_moment_matches_quadrature(self):
        series = QSeries.from_coeffs([0, 1, 0, 3, 0, 0])
        with mpmath.workprec(128):
            closed = series_tail_moment(series, 2, mpmath.mpf('0.3'), 128)
            q = lambda x: mpmath.exp(-2 * mpmath.pi * x)
            numeric = mpmath.quad(lambda x: x ** 2 * (q(x) + 3 * q(x) ** 3), [mpmath.mpf('0.3'), mpmath.inf])
            assert abs(closed - numeric) < mpmath.mpf(10) ** -30

    def test_tail_moment_needs_cusp_form(self):
        with pytest.raises(SeriesDomainError):
            series_tail_moment(QSeries.from_coeffs([1, 1, 1]), 1, 1)

    def test_tail_bound(self):
        series = QSeries.from_coeffs([0] + [1] * 30)
        bound = tail_bound(series, 1)
        assert 0 < bound < 1e-70
        assert tail_bound(QSeries.from_coeffs([0, 1, 2]), 1) == 0

    def test_non_decaying_integrand_rejected(self):
        grid = ChebyshevGrid.geometric(1, panels=3, ratio=0.5, degree=4, precision=64)
        values = grid.sample(lambda x: mpmath.mpf(1))
        with pytest.raises(UnsupportedLimitError):
            check_vanishing_at_zero(grid, values, 'constant')
