#!/usr/bin/env python3
"""
Mahler Verification Orchestrator
Expands forms, runs the operator and L-value computations and checks every
published constant, writing a deterministic report.
"""

import argparse
import json
import logging
import sys

from ..analytics import Comparison, QuadratureSpec, double_lvalue_merom, lvalue_single, rv_constant
from ..analytics.headline import RV_TARGET, RV_TOLERANCE
from ..config import apply_overrides, load_checks, load_config, validate_config
from ..cterms import constant_terms
from ..cterms.laurent import MAX_POWER
from ..errors import MahlerError, PrecisionError, UnknownFormError
from ..executors import get_executor
from ..forms.registry import FormRegistry
from ..operators import moment_case
from ..series import format_series
from ..storage import get_cache_backend
from .checks import (
    PRINTED_CTERMS, asymptotic_rows, cm_rows, cterm_rows, moment_rows, ode_rows, operator_rows,
    parametrization_rows, sampling_rows, suite_plan,
)
from .report import FORMATS, build_report, render, write_report
from .utils import (
    EXIT_ERROR, EXIT_OK, EXIT_USAGE, _print_phase, configure_logging, exit_code, print_rows, print_summary,
)

logger = logging.getLogger(__name__)

COMMANDS = ['expand', 'cterms', 'check-ode', 'check-parametrization', 'moment-rhs', 'lvalue',
            'double-lvalue', 'cm-constants', 'mahler-direct', 'verify', 'validate-config']

# L(g_j, g_1, 3, 1) and the tolerance each is known to
DOUBLE_LVALUE_TARGETS = {2: ('-0.44662442', 5e-9), 3: ('8.5383217', 5e-8)}


class UsageParser(argparse.ArgumentParser):
    """argparse with the usage-error exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"ERROR: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _count(text):
    """Integers written plainly or as 2^k."""
    try:
        if '^' in text:
            base, exp = text.split('^', 1)
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


# -- commands ----------------------------------------------------------------

def expand_command(args, config, registry, executor):
    order = args.order if args.order is not None else config['series_order']
    _print_phase(None, f"EXPAND {args.form} TO q^{order}")
    series = registry.expansion(args.form, order)
    text = format_series(series, upto=order)
    print(text)
    return [], {'form': args.form, 'order': order, 'expansion': text, 'recipe_hash': registry.recipe_hash(args.form),
                'coefficients': {str(e): str(c) for e, c in series.items() if e <= order}}


def cterms_command(args, config, registry, executor):
    _print_phase(None, f"CONSTANT TERMS OF P_{args.n}^m, m <= {args.M}")
    seq = constant_terms(args.n, args.M)
    print(", ".join(str(c) for c in seq))
    rows = [r for r in cterm_rows(args.M) if r.name.startswith(f"cterms_n{args.n}_")]
    if len(seq) < len(PRINTED_CTERMS[args.n]):
        rows = [r for r in rows if not r.name.endswith('_printed')]
    return rows, {'n': args.n, 'M': args.M, 'sequence': seq}


def check_ode_command(args, config, registry, executor):
    _print_phase(None, "OPERATORS ANNIHILATE THE CONSTANT-TERM SERIES")
    return ode_rows(args.M) + operator_rows(), None


def check_parametrization_command(args, config, registry, executor):
    order = args.order if args.order is not None else load_checks().get('parametrizations', {}).get('order', 150)
    _print_phase(None, f"MODULAR PARAMETRIZATIONS TO q^{order}")
    return parametrization_rows(order, config['seed'], registry), None


def moment_rhs_command(args, config, registry, executor):
    _print_phase(None, "MOMENT TRANSFORM", args.case)
    result = moment_case(args.case)
    data = result.to_json()
    print(json.dumps(data, sort_keys=True, indent=2))
    return moment_rows((args.case,)), data


def lvalue_command(args, config, registry, executor):
    form, s = args.form or 'f15', args.s
    precision = config['precision_bits']
    _print_phase(None, f"L({form}, {s})")
    result = lvalue_single(form, s, precision, registry)
    print(f"L({form}, {s}) = {result.value} (+- {float(result.error_bound):.1e}, {result.method})")
    rows = []
    if form == 'f15' and s == 4:
        rows.append(Comparison('rv_constant', rv_constant(result.value, precision), RV_TARGET,
                               rv_constant(result.error_bound, precision), RV_TOLERANCE))
    return rows, result.to_json()


def double_lvalue_command(args, config, registry, executor):
    _print_phase(None, f"DOUBLE L-VALUE L(g{args.j}, g1, 3, 1)")
    result = double_lvalue_merom(args.j, QuadratureSpec.from_config(config), config['precision_bits'], registry)
    target, tolerance = DOUBLE_LVALUE_TARGETS[args.j]
    row = Comparison(f"double_lvalue_g{args.j}", result.value, target, result.error_bound, tolerance)
    return [row], result.to_json()


def cm_constants_command(args, config, registry, executor):
    checks = load_checks()
    precision = config['precision_bits']
    _print_phase(1, "CM CONSTANTS")
    rows = cm_rows(checks.get('cm_constants'), precision, QuadratureSpec.from_config(config), registry)
    print_rows([r.to_row() for r in rows])
    _print_phase(2, "ENDPOINT ASYMPTOTICS")
    tolerance = checks.get('asymptotics', {}).get('tolerance', 1e-10)
    more = asymptotic_rows(tolerance, precision, registry)
    print_rows([r.to_row() for r in more])
    return rows + more, None


def mahler_direct_command(args, config, registry, executor):
    sampling = config.get('sampling', {})
    samples = args.samples or sampling.get('samples', 2 ** 24)
    sigmas = load_checks().get('sampling', {}).get('sigmas', 3)
    _print_phase(None, f"DIRECT SAMPLING OF m(1 + x_1 + ... + x_{args.n}), {samples} POINTS")
    rows = sampling_rows(samples, config['seed'], sampling.get('batches', 16), sigmas, executor, ns=(args.n,))
    return rows, None


def verify_command(args, config, registry, executor):
    plan = suite_plan(config, load_checks(), registry, executor, run_all=args.all)
    rows = []
    for i, (name, entry, build) in enumerate(plan, 1):
        _print_phase(i, name.upper(), entry.get('kind'))
        group = build(entry)
        print_rows([r.to_row() for r in group])
        if not all(r.passed for r in group):
            print(f"  [ERROR] {entry.get('message', name)}")
        rows += group
    return rows, None


HANDLERS = {
    'expand': expand_command,
    'cterms': cterms_command,
    'check-ode': check_ode_command,
    'check-parametrization': check_parametrization_command,
    'moment-rhs': moment_rhs_command,
    'lvalue': lvalue_command,
    'double-lvalue': double_lvalue_command,
    'cm-constants': cm_constants_command,
    'mahler-direct': mahler_direct_command,
    'verify': verify_command,
}

# commands that print their own rows while running
SELF_REPORTING = {'cm-constants', 'verify'}


def _check_args(parser, args):
    if args.command in ('expand',) and not args.form:
        parser.error("expand requires a form id (e.g. g3w4)")
    if args.command == 'moment-rhs' and not args.case:
        parser.error("moment-rhs requires --case (thm1, thm2 or toy)")
    if args.command == 'double-lvalue' and args.j is None:
        parser.error("double-lvalue requires --j (2 or 3)")
    if args.command == 'expand' and args.order is not None and args.order < 0:
        parser.error("--order must be non-negative")
    if args.command == 'cterms' and args.n == 1:
        parser.error("cterms supports -n 2, 3 or 4")
    if args.command in ('cterms', 'check-ode') and not 0 <= args.M <= MAX_POWER:
        parser.error(f"-M must be between 0 and {MAX_POWER}")
    if args.samples is not None and args.samples < 2:
        parser.error("--samples must be at least 2")


def build_parser():
    parser = UsageParser(
        description='Mahler Measure Verification',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Exact expansions and constant terms
  python3 -m mahler.verification.orchestrator expand g3w4 --order 3
  python3 -m mahler.verification.orchestrator cterms -n 4 -M 8

  # Operators and moment problems
  python3 -m mahler.verification.orchestrator check-ode
  python3 -m mahler.verification.orchestrator moment-rhs --case thm2

  # Numerics
  python3 -m mahler.verification.orchestrator lvalue f15 --s 4
  python3 -m mahler.verification.orchestrator double-lvalue --j 2
  python3 -m mahler.verification.orchestrator mahler-direct -n 4 --samples 2^24 --seed 1

  # Full acceptance suite with a fast local config
  python3 -m mahler.verification.orchestrator verify --all --config local --report reports/verify.json
        """
    )
    parser.add_argument('command', choices=COMMANDS, help='Verification command')
    parser.add_argument('form', nargs='?', help='Form id for expand / lvalue (e.g. g3w4, f15)')
    parser.add_argument('--config', help="Config override: 'local' or a YAML path")
    parser.add_argument('--precision', type=int, help='Working precision in bits')
    parser.add_argument('--order', type=int, help='Series order')
    parser.add_argument('--seed', type=int, help='Random seed')
    parser.add_argument('--output', choices=FORMATS, help='Report format')
    parser.add_argument('--report', help='Write the report to this path')
    parser.add_argument('--workers', type=int, help='Process-pool size')
    parser.add_argument('--executor', choices=['serial', 'process'], help='Executor kind')
    parser.add_argument('--cache', choices=['local', 's3', 'none'], help='Cache backend')
    parser.add_argument('-n', type=int, choices=[1, 2, 3, 4], default=4, help='Number of variables')
    parser.add_argument('-M', type=int, default=12, help='Largest power of P_n')
    parser.add_argument('--j', type=int, choices=sorted(DOUBLE_LVALUE_TARGETS), help='Inner form g_j')
    parser.add_argument('--s', type=int, default=4, help='L-value argument')
    parser.add_argument('--case', choices=['thm1', 'thm2', 'toy'], help='Moment problem')
    parser.add_argument('--samples', type=_count, help='Torus sample count (e.g. 2^24)')
    parser.add_argument('--all', action='store_true', help='verify: include disabled check groups')
    parser.add_argument('--verbose', action='store_true', help='Debug logging')
    return parser


def main(argv=None):
    """Main entry point - parse command line and run one command."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_args(parser, args)
    configure_logging(args.verbose)

    values = vars(args).copy()
    if args.command == 'expand':
        # expansion order, not the config's series order
        values['order'] = None
    config = apply_overrides(load_config(args.config), values)
    is_valid, errors = validate_config(config)
    if not is_valid:
        for error in errors:
            print(f"ERROR: {error}")
        return EXIT_USAGE
    if args.command == 'validate-config':
        print("[OK] Configuration is valid")
        return EXIT_OK

    registry = FormRegistry(cache=get_cache_backend(config))
    try:
        with get_executor(config) as executor:
            rows, data = HANDLERS[args.command](args, config, registry, executor)
    except (UnknownFormError, PrecisionError) as e:
        print(f"ERROR: {e}")
        return EXIT_USAGE
    except (MahlerError, ArithmeticError, ValueError) as e:
        logger.debug("%s failed", args.command, exc_info=True)
        print(f"ERROR: {e}")
        return EXIT_ERROR

    report = build_report(args.command, config, [r.to_row() for r in rows], data)
    fmt = config.get('output', 'json')
    if args.report:
        ok, errors = write_report(report, args.report, fmt)
        if not ok:
            for error in errors:
                print(f"ERROR: {error}")
            return EXIT_ERROR
        print(f"Saved report: {args.report}")
    elif args.output:
        print(render(report, fmt), end="")

    if report['rows']:
        if args.command not in SELF_REPORTING:
            print_rows(report['rows'])
        print_summary(report['rows'])
    return exit_code(report['rows'])


if __name__ == '__main__':
    sys.exit(main())
