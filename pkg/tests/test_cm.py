"""
tests/test_cm.py
CM-point constants, first moments of a* and its endpoint behaviour.
"""

import mpmath
import pytest

from mahler.analytics import QuadratureSpec, asymptotic_constants, cm_constants, log_coefficient_at_one, moments
from mahler.analytics.cm import symbolic_value
from mahler.analytics.lvalues import chowla_selberg
from mahler.operators.cases import A_STAR_1, MOMENTS, THETA2_A_STAR_1, THETA_A_STAR_1, c1_relation


class TestClosedForms:

    @pytest.mark.parametrize('expr, target', [
        (A_STAR_1, '0.1649669005300320'),
        (THETA_A_STAR_1, '-0.032993380106006'),
        (THETA2_A_STAR_1, '0.00330836512971504'),
        (MOMENTS['thm2'][1], '-0.708951451918989714'),
    ])
    def test_values_at_the_cm_point(self, expr, target):
        omega = chowla_selberg(128)
        assert abs(symbolic_value(expr, omega, 128) - mpmath.mpf(target)) < 1e-13

    def test_relation_from_theta_values(self):
        omega = chowla_selberg(128)
        with mpmath.workprec(128):
            diff = symbolic_value(c1_relation(), omega, 128) - symbolic_value(MOMENTS['thm2'][1], omega, 128)
            assert abs(diff) < mpmath.mpf(10) ** -30

    def test_unsupported_n(self):
        with pytest.raises(ValueError):
            moments(4)
        with pytest.raises(ValueError):
            asymptotic_constants(4)


@pytest.mark.slow
class TestQuadratures:

    def test_moments(self, local_config, registry):
        spec = QuadratureSpec.from_config(local_config)
        result = cm_constants(128, spec, registry)
        with mpmath.workprec(128):
            assert abs(result.c0_n2.value - mpmath.mpf(1) / 4) < 1e-10
            assert abs(result.c1_minus_3c0_n2.value + 6 / mpmath.pi ** 2) < 1e-10
            assert abs(result.c0_n3.value - mpmath.mpf(1) / 5) < 1e-10
            assert abs(result.c1_minus_4c0.value - result.c1_minus_4c0_closed) < 1e-10

    def test_asymptotics(self, registry):
        with mpmath.workprec(128):
            n2 = asymptotic_constants(2, 128, registry)
            assert abs(n2.alpha0 - 1 / (mpmath.sqrt(3) * mpmath.pi)) < 1e-10
            assert abs(n2.alpha1) < 1e-10
            n3 = asymptotic_constants(3, 128, registry)
            assert abs(n3.alpha0 - 9 / (4 * mpmath.pi ** 2) * mpmath.log(2)) < 1e-10
            assert abs(n3.alpha1 + 3 / (8 * mpmath.pi ** 2)) < 1e-10

    def test_log_coefficient_at_one(self, registry):
        kappa, err = log_coefficient_at_one(128, registry)
        with mpmath.workprec(128):
            assert abs(kappa + 3 / (4 * mpmath.pi ** 2)) <= 10 * err
