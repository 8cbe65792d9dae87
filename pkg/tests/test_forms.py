"""
tests/test_forms.py
Characters, eta quotients, Eisenstein series, the registry and pointwise values.
"""

from fractions import Fraction

import mpmath
import pytest
import sympy

from mahler.config.validation import validate_recipe
from mahler.errors import PrecisionError, RecipeError, UnknownFormError
from mahler.forms import (
    CHI_M3, CHI_M15, DEFAULT_FORMS, EISENSTEIN, IDENTITIES, DirichletChar, EtaQuotient, FormRegistry, G2Fit,
    default_registry, divisor_sums, eisenstein_expansion, eta_quotient_expansion, eta_value, form_value, fricke_image,
    kronecker_symbol, parametrization_values, series_value,
)
from mahler.forms.eta import euler_product
from mahler.forms.evaluate import _positive_along_axis
from mahler.forms.registry import pullback
from mahler.series import alternate_signs, format_series
from mahler.storage import LocalCache


class TestCharacters:

    def test_chi_minus_3(self):
        assert [CHI_M3(n) for n in range(1, 7)] == [1, -1, 0, 1, -1, 0]
        assert CHI_M3.is_odd()

    def test_chi_minus_15(self):
        assert CHI_M15.modulus == 15
        assert CHI_M15(2) == 1
        assert CHI_M15(7) == -1
        assert CHI_M15(5) == 0

    def test_kronecker_needs_positive_n(self):
        with pytest.raises(ValueError):
            kronecker_symbol(-3, 0)

    def test_table_size_checked(self):
        with pytest.raises(ValueError):
            DirichletChar(3, (0, 1))


class TestEta:

    def test_pentagonal_numbers(self):
        coeffs = [c for _, c in euler_product(12).items()]
        assert coeffs == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]

    def test_quotient_lead_and_weight(self):
        eq = EtaQuotient(((1, 4), (3, 4), (2, -2), (6, -2)))
        assert eq.weight == 2
        assert eq.lead_exp == 0
        assert eta_quotient_expansion(eq, 10).lead_exp == 0

    def test_eta_at_i(self):
        with mpmath.workprec(128):
            expected = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
            assert abs(eta_value(mpmath.mpc(0, 1), 128) - expected) < mpmath.mpf(10) ** -30

    def test_modular_transformation(self, rng):
        """eta(-1/tau) = sqrt(-i tau) eta(tau) on random points."""
        with mpmath.workprec(120):
            for _ in range(100):
                tau = mpmath.mpc(rng.uniform(-2, 2), rng.uniform(0.05, 2))
                lhs = eta_value(-1 / tau, 100)
                rhs = mpmath.sqrt(-1j * tau) * eta_value(tau, 100)
                assert abs(lhs - rhs) <= mpmath.ldexp(1, -90) * max(1, abs(rhs))

    def test_precision_floor(self):
        with pytest.raises(PrecisionError):
            eta_value(mpmath.mpc(0, 1), 8)

    def test_fricke_image_of_level_15_pair(self):
        image = fricke_image(EtaQuotient(((1, 3), (15, 3))), 15)
        assert image.image == EtaQuotient(((15, 3), (1, 3)))
        assert image.weight == 3
        assert sympy.simplify(image.scale - sympy.Integer(15) ** sympy.Rational(3, 2)) == 0

    def test_fricke_image_needs_divisor(self):
        with pytest.raises(ValueError):
            fricke_image(EtaQuotient(((4, 1),)), 6)


class TestEisenstein:

    def test_sigma_one(self):
        assert divisor_sums(6, 1) == [0, 1, 3, 4, 7, 6, 12]

    def test_E4_normalisation(self):
        s = eisenstein_expansion('E4', 4)
        assert [s.coeff(k) for k in range(5)] == [Fraction(1, 240), 1, 9, 28, 73]

    def test_unknown_series(self):
        with pytest.raises(UnknownFormError):
            eisenstein_expansion('E5', 4)


class TestRegistry:

    def test_printed_expansion(self, registry):
        assert format_series(registry.expansion('g3w4', 3), upto=3) == "13q + 316q^2 + 2328q^3"

    def test_unknown_form(self, registry):
        with pytest.raises(UnknownFormError):
            registry.expansion('no-such-form', 10)

    @pytest.mark.parametrize('name, printed', [
        ('t2', [0, 1, -4, 10]),
        ('f2', [1, 3, 3]),
        ('t3', [0, -1, -6, -21]),
        ('f3', [1, -4, 4, -4]),
        ('f15', [0, 1, 1, -3, -3]),
        ('g1w3', [1, 1, -5, 1, 11]),
        ('g2w4', [0, -1, -7, -6, 5, 120, 498]),
        ('g1hat', [0, 1, 5, 9, 11, 24]),
    ])
    def test_printed_coefficients(self, registry, name, printed):
        series = registry.expansion(name, 20)
        assert [series.coeff(k) for k in range(len(printed))] == printed

    def test_unshifted_pullback_alternates_to_g1w3(self, registry):
        unshifted = registry.expansion(pullback('L2', [1], [0, 1]), 10)
        shifted = alternate_signs(unshifted)
        assert [shifted.coeff(k) for k in range(5)] == [1, 1, -5, 1, 11]

    @pytest.mark.parametrize('recipe', [
        {'kind': 'mystery'},
        {'kind': 'eta', 'factors': [[1, 0.5]]},
        {'kind': 'eisenstein', 'name': 'E5'},
        {'kind': 'linear', 'terms': [{'form': 'E4'}]},
        {'kind': 'pullback', 'param': 'L4', 'num': ['1'], 'den': ['1']},
        ['eta'],
    ])
    def test_bad_recipe(self, recipe):
        with pytest.raises(RecipeError):
            FormRegistry().register('bad', recipe, 2)

    def test_default_recipes_match_schema(self):
        for name, entry in DEFAULT_FORMS.items():
            assert validate_recipe(entry.recipe) == (True, []), name

    def test_g2_constant_is_consistent(self, registry):
        fit = registry.fit_g2_constant(60)
        assert fit.first_mismatch is None
        assert fit.consistent_with(EISENSTEIN['G2'].constant)
        assert not G2Fit(Fraction(1, 12)).consistent_with(Fraction(-1, 24))

    def test_identities(self, registry):
        for lhs, rhs in IDENTITIES:
            result = registry.identity_check(lhs, rhs, 60)
            assert result.equal, f"{lhs} = {rhs} fails at q^{result.first_mismatch}"

    def test_identity_failure_reports_first_mismatch(self, registry):
        result = registry.identity_check('E4', 'E3chi', 20)
        assert not result.equal
        assert result.first_mismatch == 0

    def test_eta_leads_consistent(self, registry):
        for name in ('t2', 'f2', 't3', 'f3', 'E3chi_eta'):
            assert registry.lead_exp_consistent(name)

    def test_recipe_hash_is_stable(self, registry):
        assert registry.recipe_hash('g1w4') == FormRegistry().recipe_hash('g1w4')
        assert registry.recipe_hash('g1w4') != registry.recipe_hash('g2w4')

    def test_default_registry_is_shared(self):
        assert default_registry() is default_registry()

    def test_expansion_cached_on_disk(self, tmp_path):
        cache = LocalCache({'directory': str(tmp_path)})
        first = FormRegistry(cache=cache).expansion('f3', 30)
        assert list(tmp_path.glob('expansion-*.json'))
        second = FormRegistry(cache=cache).expansion('f3', 30)
        assert first == second


class TestPointwise:

    def test_form_value_matches_series(self, registry):
        with mpmath.workprec(128):
            z = mpmath.mpc('0.13', '1.1')
            for name in ('f3', 't2', 'g1w4', 'E4'):
                exact = form_value(name, z, 128, registry)
                summed = series_value(name, z, 200, registry, 128)
                assert abs(exact - summed) < mpmath.mpf(10) ** -25 * max(1, abs(exact))

    def test_parametrization_values_consistent(self, registry):
        with mpmath.workprec(128):
            z = mpmath.mpc('0.5', '0.9')
            t, f, _ = parametrization_values('L3', z, 128, registry)
            assert abs(t - form_value('t3', z, 128, registry)) < mpmath.mpf(10) ** -25
            assert abs(f - form_value('f3', z, 128, registry)) < mpmath.mpf(10) ** -25

    @pytest.mark.parametrize('z, positive', [
        (mpmath.mpc(0, '0.1'), True),
        (mpmath.mpc(2, '0.05'), True),
        (mpmath.mpc('0.5', '0.7'), True),
        (mpmath.mpc('1.5', '0.3'), True),
        (mpmath.mpc('0.5', '0.2'), False),
        (mpmath.mpc('0.3', 1), False),
    ])
    def test_axis_shortcut_only_above_elliptic_point(self, z, positive):
        assert _positive_along_axis(None, 'L3', z, None) is positive

