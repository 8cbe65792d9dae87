"""
tests/test_verification.py
Reports, exit codes and the command-line entry point.
"""

import argparse
import json

import pytest

from mahler.analytics.headline import RV_TARGET
from mahler.config import load_checks, validate_report
from mahler.verification import analytic_measure, build_report, orchestrator, render, suite_plan, write_report
from mahler.verification.checks import identity_rows, moment_oracle_rows
from mahler.verification.orchestrator import _count, main
from mahler.verification.utils import EXIT_ERROR, EXIT_EXACT, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, exit_code

ROWS = [
    {'check': 'cterms_n2_printed', 'computed': '[1, 3]', 'target': '[1, 3]', 'tolerance': 0.0, 'pass': True,
     'kind': 'exact'},
    {'check': 'c0_n2', 'computed': '0.25', 'target': '0.25', 'tolerance': 1e-10, 'pass': True, 'kind': 'numeric'},
]


def _failed(row):
    return dict(row, **{'pass': False})


class TestReport:

    def test_report_is_schema_valid(self, local_config):
        report = build_report('verify', local_config, ROWS, {'n': 2})
        assert validate_report(report) == (True, [])
        assert report['header'] == {'command': 'verify', 'precision_bits': 128, 'series_order': 80, 'seed': 1}

    def test_json_is_deterministic(self, local_config):
        first = render(build_report('cterms', local_config, ROWS), 'json')
        second = render(build_report('cterms', local_config, list(ROWS)), 'json')
        assert first == second
        assert json.loads(first)['schema_version'] == '1.0.0'

    def test_csv(self, local_config):
        lines = render(build_report('cterms', local_config, ROWS), 'csv').splitlines()
        assert lines[0] == 'check,computed,target,tolerance,pass,kind'
        assert len(lines) == 3

    def test_text(self, local_config):
        text = render(build_report('cterms', local_config, ROWS), 'text')
        assert 'PASS  cterms_n2_printed' in text

    def test_unknown_format(self, local_config):
        with pytest.raises(ValueError):
            render(build_report('cterms', local_config, ROWS), 'xml')

    def test_write_refuses_invalid_report(self, tmp_path, local_config):
        report = build_report('cterms', local_config, [{'check': 'x'}])
        ok, errors = write_report(report, tmp_path / 'r.json')
        assert not ok and errors
        assert not (tmp_path / 'r.json').exists()


class TestExitCodes:

    def test_all_pass(self):
        assert exit_code(ROWS) == EXIT_OK

    def test_numeric_failure(self):
        assert exit_code([ROWS[0], _failed(ROWS[1])]) == EXIT_NUMERIC

    def test_exact_failure_outranks_numeric(self):
        assert exit_code([_failed(ROWS[0]), _failed(ROWS[1])]) == EXIT_EXACT


class TestPlan:

    def test_follows_checks_file(self, local_config):
        checks = load_checks()
        plan = suite_plan(local_config, checks)
        assert [name for name, _, _ in plan] == [k for k in checks if k != 'version']

    def test_disabled_groups_skipped(self, local_config):
        checks = {'cterms': {'enabled': False}, 'moment_cases': {'enabled': True}}
        assert [n for n, _, _ in suite_plan(local_config, checks)] == ['moment_cases']
        assert len(suite_plan(local_config, checks, run_all=True)) == 2

    def test_analytic_measures(self):
        assert analytic_measure(1) == 0
        assert abs(analytic_measure(2) - 0.3230659472194505) < 1e-12
        assert abs(analytic_measure(3) - 0.4262783988175058) < 1e-12
        assert analytic_measure(4) == RV_TARGET
        with pytest.raises(ValueError):
            analytic_measure(5)

    def test_identity_rows_check_g2_normalization(self, registry):
        rows = {row.name: row for row in identity_rows(60, registry)}
        assert rows['g2_normalization'].passed
        assert all(row.passed for row in rows.values())

    def test_moment_oracle_rows(self):
        rows = moment_oracle_rows(cases=3, seed=7, order=10)
        assert [row.name for row in rows] == [f"moment_oracle_case_{i}" for i in range(3)]
        assert all(row.passed for row in rows)


class TestCommandLine:

    def test_count(self):
        assert _count('2^10') == 1024
        assert _count('77') == 77
        with pytest.raises(argparse.ArgumentTypeError):
            _count('lots')

    def test_expand(self, capsys):
        assert main(['expand', 'g3w4', '--order', '3', '--config', 'local']) == EXIT_OK
        assert "13q + 316q^2 + 2328q^3" in capsys.readouterr().out

    def test_cterms(self, capsys):
        assert main(['cterms', '-n', '3', '-M', '4', '--config', 'local']) == EXIT_OK
        assert "1, 4, 28, 256, 2716" in capsys.readouterr().out

    def test_report_file(self, tmp_path):
        path = tmp_path / 'reports' / 'moment.json'
        assert main(['moment-rhs', '--case', 'thm1', '--config', 'local', '--report', str(path)]) == EXIT_OK
        report = json.loads(path.read_text())
        assert report['header']['command'] == 'moment-rhs'
        assert all(row['pass'] for row in report['rows'])

    def test_unknown_form_is_a_usage_error(self):
        assert main(['expand', 'no-such-form', '--config', 'local']) == EXIT_USAGE

    def test_usage_errors_exit_4(self):
        with pytest.raises(SystemExit) as excinfo:
            main(['moment-rhs'])
        assert excinfo.value.code == EXIT_USAGE
        with pytest.raises(SystemExit) as excinfo:
            main(['frobnicate'])
        assert excinfo.value.code == EXIT_USAGE

    @pytest.mark.parametrize('argv', [
        ['cterms', '-n', '1'],
        ['cterms', '-M', '13'],
        ['check-ode', '-M', '-1'],
        ['mahler-direct', '--samples', '1'],
    ])
    def test_out_of_range_arguments_exit_4(self, argv):
        with pytest.raises(SystemExit) as excinfo:
            main(argv + ['--config', 'local'])
        assert excinfo.value.code == EXIT_USAGE

    def test_computation_errors_are_not_usage_errors(self, monkeypatch, capsys):
        def broken(args, config, registry, executor):
            raise ValueError("math domain error")

        monkeypatch.setitem(orchestrator.HANDLERS, 'cterms', broken)
        assert main(['cterms', '--config', 'local']) == EXIT_ERROR
        assert "ERROR: math domain error" in capsys.readouterr().out

    def test_invalid_override_rejected(self):
        assert main(['validate-config', '--precision', '32']) == EXIT_USAGE

    def test_validate_config(self, capsys):
        assert main(['validate-config', '--config', 'local']) == EXIT_OK
        assert "[OK]" in capsys.readouterr().out
