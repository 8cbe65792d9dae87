"""
tests/test_double.py
Double L-values of holomorphic and meromorphic pairs.
"""

import mpmath
import pytest

from mahler.analytics import (
    QuadratureSpec, decay_profile, dirichlet_lvalue, double_lvalue_holo, double_lvalue_merom, iterated_lvalue,
)
from mahler.errors import PrecisionError, SeriesDomainError
from mahler.forms import CHI_M3


class TestArguments:

    def test_inner_form_must_be_cuspidal(self, registry):
        with pytest.raises(SeriesDomainError):
            double_lvalue_holo('E4', 'g1w4', 2, 1, registry=registry)

    def test_non_positive_s2_vanishes(self, registry):
        result = double_lvalue_holo('g2w3', 'g1w3', 2, 0, registry=registry)
        assert result.value == 0
        assert result.method == 'closed-form'

    def test_integer_arguments(self, registry):
        with pytest.raises(ValueError):
            iterated_lvalue('g2w3', 'g1w3', 0, 1, registry=registry)

    def test_unknown_meromorphic_inner(self):
        with pytest.raises(ValueError):
            double_lvalue_merom(4)

    def test_tolerance_checked_against_precision(self, registry):
        with pytest.raises(PrecisionError):
            iterated_lvalue('g2w3', 'g1w3', 2, 1, QuadratureSpec(abs_tol=1e-30), 64, registry)


@pytest.mark.slow
class TestValues:

    def test_weight_three_relation(self, local_config, registry):
        """L(g2, g1, 2, 1) = (3 sqrt3 pi/16) L(chi_-3, 2) - (7/6) zeta(3)."""
        spec = QuadratureSpec.from_config(local_config)
        result = double_lvalue_holo('g2w3', 'g1w3', 2, 1, spec, 128, registry)
        with mpmath.workprec(128):
            lchi = dirichlet_lvalue(CHI_M3, 2, 128).value
            target = 3 * mpmath.sqrt(3) * mpmath.pi / 16 * lchi - mpmath.mpf(7) / 6 * mpmath.zeta(3)
            assert abs(result.value - target) < 1e-10

    @pytest.mark.parametrize('j, target, tol', [(2, '-0.44662442', 5e-9), (3, '8.5383217', 5e-8)])
    def test_meromorphic(self, local_config, registry, j, target, tol):
        spec = QuadratureSpec.from_config(local_config)
        result = double_lvalue_merom(j, spec, 128, registry)
        assert abs(result.value - mpmath.mpf(target)) < tol

    @pytest.mark.parametrize('form', ['g2w4', 'g3w4'])
    def test_decay_at_infinity(self, registry, form):
        assert decay_profile(form, registry=registry).bounded
