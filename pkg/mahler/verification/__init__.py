"""
Verification command line: acceptance suites, reports and the orchestrator.
"""

from .checks import analytic_measure, ode_residual, suite_plan
from .report import SCHEMA_VERSION, build_report, render, write_report

__all__ = ['analytic_measure', 'ode_residual', 'suite_plan', 'SCHEMA_VERSION', 'build_report', 'render',
           'write_report']
