"""
tests/test_headline.py
Comparison rows and the Mahler-measure relations.
"""

import mpmath
import pytest

from mahler.analytics import Comparison, QuadratureSpec, eisenstein_chain, headline_checks, mahler_via_lvalue
from mahler.analytics.headline import CHECKS, HeadlineReport
from mahler.executors import SerialExecutor


class TestComparison:

    def test_numeric_uses_tolerance(self):
        row = Comparison('x', mpmath.mpf('1.00001'), mpmath.mpf(1), 1e-12, 1e-4)
        assert row.passed
        assert row.to_row()['tolerance'] == 1e-4

    def test_numeric_falls_back_to_error_bound(self):
        assert not Comparison('x', mpmath.mpf('1.001'), mpmath.mpf(1), 1e-6).passed

    def test_exact(self):
        assert Comparison('x', '[1, 3]', '[1, 3]', 0, kind='exact').passed
        row = Comparison('x', None, 7, 0, kind='exact').to_row()
        assert row == {'check': 'x', 'computed': 'None', 'target': '7', 'tolerance': 0.0, 'pass': False,
                       'kind': 'exact'}

    def test_report_first_failure(self):
        ok = Comparison('a', 1, 1, 0, kind='exact')
        bad = Comparison('b', 1, 2, 0, kind='exact')
        report = HeadlineReport((ok, bad))
        assert not report.passed
        assert report.first_failure is bad


class TestMahlerMeasures:

    @pytest.mark.parametrize('n', [2, 3])
    def test_single_lvalue(self, registry, n):
        row = mahler_via_lvalue(n, 128, registry)
        assert row.passed, row.to_row()

    def test_unsupported_n(self):
        with pytest.raises(ValueError):
            mahler_via_lvalue(4)

    def test_closed_form_chain(self, registry):
        result = eisenstein_chain(60, registry)
        assert result.holds

    def test_unknown_check(self):
        with pytest.raises(ValueError):
            headline_checks(names=['mahler_n5'])

    def test_checks_come_back_in_order(self):
        report = headline_checks(128, QuadratureSpec(abs_tol=1e-20), SerialExecutor(),
                                 names=['mahler_n3', 'eisenstein_chain'])
        names = [c.name for c in report.comparisons]
        assert names[0] == 'mahler_n3'
        assert 'eisenstein_chain' in names
        assert report.passed

    @pytest.mark.slow
    def test_every_check_passes(self, local_config):
        spec = QuadratureSpec.from_config(local_config)
        report = headline_checks(local_config['precision_bits'], spec, names=sorted(CHECKS))
        assert report.passed, report.first_failure
