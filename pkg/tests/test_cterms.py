"""
tests/test_cterms.py
Constant terms of P_n^m and direct torus sampling.
"""

import pytest

from mahler.cterms import LaurentPolyMulti, constant_terms, constant_terms_multinomial, mahler_direct
from mahler.executors import PoolExecutor, SerialExecutor
from mahler.verification import ode_residual

PRINTED = {
    2: [1, 3, 15, 93, 639],
    3: [1, 4, 28, 256, 2716],
    4: [1, 5, 45, 545, 7885],
}

# m(1 + x + y) and m(1 + x + y + z)
MAHLER_N2 = 0.3230659472194505
MAHLER_N3 = 0.4262783988175058


class TestConstantTerms:

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_printed_lists(self, n):
        assert constant_terms(n, 4) == PRINTED[n]

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_multinomial_formula_agrees(self, n):
        assert constant_terms(n, 8) == constant_terms_multinomial(n, 8)

    @pytest.mark.parametrize('n, M', [(1, 3), (5, 3), (3, 13), (3, -1)])
    def test_range(self, n, M):
        with pytest.raises(ValueError):
            constant_terms(n, M)

    def test_mahler_poly_shape(self):
        p = LaurentPolyMulti.mahler_poly(2)
        # (1 + x + y)(1 + 1/x + 1/y) has 7 distinct monomials
        assert len(p) == 7
        assert p.constant_term() == 3

    def test_mismatched_variables(self):
        with pytest.raises(ValueError):
            LaurentPolyMulti.one(2) * LaurentPolyMulti.one(3)

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_operators_annihilate_sequences(self, n):
        assert all(c == 0 for _, c in ode_residual(n, 10).items())


class TestDirectSampling:

    def test_n1_is_zero(self):
        estimate = mahler_direct(1, 2 ** 12, seed=1, batches=4)
        assert abs(estimate.value) < max(5 * estimate.stderr, 1e-2)

    def test_n2_close_to_analytic(self):
        estimate = mahler_direct(2, 2 ** 14, seed=7, batches=8)
        assert estimate.samples == 2 ** 14
        assert abs(estimate.value - MAHLER_N2) < max(5 * estimate.stderr, 5e-3)

    def test_deterministic_for_a_seed(self):
        first = mahler_direct(3, 2 ** 10, seed=11, batches=4)
        second = mahler_direct(3, 2 ** 10, seed=11, batches=4)
        assert first == second

    @pytest.mark.slow
    def test_pool_matches_serial(self):
        serial = mahler_direct(3, 2 ** 14, seed=5, batches=4, executor=SerialExecutor())
        with PoolExecutor(max_workers=2) as pool:
            parallel = mahler_direct(3, 2 ** 14, seed=5, batches=4, executor=pool)
        assert serial == parallel
        assert abs(serial.value - MAHLER_N3) < max(5 * serial.stderr, 5e-3)

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            mahler_direct(5, 1024)
        with pytest.raises(ValueError):
            mahler_direct(2, 1024, batches=1)
