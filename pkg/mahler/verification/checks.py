#!/usr/bin/env python3
"""
Acceptance suites.

Each suite returns a list of Comparison rows; `suite_plan` walks the entries
of config/checks.yaml in order and skips the disabled ones unless asked to
run everything.
"""

import logging
from fractions import Fraction

import mpmath
import sympy

from ..analytics import (
    Comparison, QuadratureSpec, asymptotic_constants, cm_constants, dirichlet_lvalue, headline_checks,
    log_coefficient_at_one,
)
from ..analytics.headline import RV_TARGET
from ..cterms import constant_terms, constant_terms_multinomial, mahler_direct
from ..forms import CHI_M3, EISENSTEIN
from ..forms.registry import IDENTITIES, default_registry
from ..operators import (
    L2, L2_DUAL, L3, L3_DUAL, L4, c1_relation, check_parametrization, dual_op, minus_residue_balance, moment_case,
    moment_oracle, principal_period, rescaling_holds,
)
from ..operators.cases import EXPECTED_H_BETA, EXPECTED_RHS, MOMENTS
from ..series import QSeries

logger = logging.getLogger(__name__)

PRINTED_CTERMS = {
    2: [1, 3, 15, 93, 639],
    3: [1, 4, 28, 256, 2716],
    4: [1, 5, 45, 545, 7885],
}

ANNIHILATORS = {2: L2, 3: L3, 4: L4}
DUALS = {'L2': (L2_DUAL, L2), 'L3': (L3_DUAL, L3)}
PARAMETRIZED = {'L2': L2, 'L3': L3}


def _exact(name, computed, target):
    return Comparison(name, computed, target, 0, kind='exact')


# -- exact suites ------------------------------------------------------------

def cterm_rows(max_power=12):
    rows = []
    for n, printed in PRINTED_CTERMS.items():
        seq = constant_terms(n, max_power)
        rows.append(_exact(f"cterms_n{n}_printed", str(seq[:len(printed)]), str(printed)))
        rows.append(_exact(f"cterms_n{n}_multinomial", str(seq), str(constant_terms_multinomial(n, max_power))))
    return rows


def ode_residual(n, max_power=12):
    """L_n applied to sum CT(P_n^m) t^m; exact zero through t^max_power."""
    seq = constant_terms(n, max_power)
    series = QSeries.from_coeffs([Fraction(c) for c in seq])
    return ANNIHILATORS[n].apply(series)


def ode_rows(max_power=12):
    rows = []
    for n in ANNIHILATORS:
        residual = ode_residual(n, max_power)
        nonzero = [e for e, c in residual.items() if c != 0]
        rows.append(_exact(f"ode_L{n}_annihilates_cterms", nonzero[0] if nonzero else None, None))
        period = principal_period(ANNIHILATORS[n], max_power)
        rows.append(_exact(f"principal_period_L{n}",
                           str([int(period.coeff(m)) for m in range(max_power + 1)]),
                           str(constant_terms(n, max_power))))
    return rows


def operator_rows():
    rows = [_exact(f"rescaling_{name}", rescaling_holds(name), True) for name in DUALS]
    for name, (dual, target) in DUALS.items():
        reflected = dual_op(dual).op
        rows.append(_exact(f"dual_{name}", reflected == target or reflected == -target, True))
    return rows


def identity_rows(order=200, registry=None):
    registry = registry or default_registry()
    rows = []
    for lhs, rhs in IDENTITIES:
        result = registry.identity_check(lhs, rhs, order)
        rows.append(_exact(f"identity {lhs} = {rhs}", result.first_mismatch, None))
    fit = registry.fit_g2_constant(order)
    rows.append(_exact('g2_normalization', fit.consistent_with(EISENSTEIN['G2'].constant), True))
    return rows


def moment_oracle_rows(cases=50, seed=1, order=50, max_degree=3):
    rows = []
    for i, result in enumerate(moment_oracle(cases, seed, order, max_degree)):
        rows.append(_exact(f"moment_oracle_case_{i}", result.first_mismatch, None))
    return rows


def parametrization_rows(order=150, seed=1, registry=None):
    rows = []
    for param, op in PARAMETRIZED.items():
        result = check_parametrization(param, op, order, seed, registry)
        rows.append(_exact(f"parametrization_{param}", result.first_mismatch, None))
    return rows


def moment_rows(cases=('toy', 'thm1', 'thm2')):
    rows = []
    for name in cases:
        result = moment_case(name)
        rows.append(_exact(f"moment_{name}_H_beta", str(result.H_beta), str(EXPECTED_H_BETA[name])))
        if EXPECTED_RHS[name] is not None:
            rows.append(_exact(f"moment_{name}_rhs", str(result.rhs), str(EXPECTED_RHS[name])))
            residue, balance = minus_residue_balance(name)
            rows.append(_exact(f"moment_{name}_decay_at_infinity", sympy.simplify(residue - balance) == 0, True))
    if 'thm2' in cases:
        rows.append(_exact('c1_minus_4c0_from_theta_values',
                           sympy.simplify(c1_relation() - MOMENTS['thm2'][1]) == 0, True))
    return rows


# -- numeric suites ----------------------------------------------------------

def _mpf(value):
    return mpmath.mpf(str(value))


def cm_rows(settings=None, precision=256, spec=None, registry=None):
    settings = settings or {}
    targets = settings.get('targets', {})
    tol = settings.get('tolerance', 1e-13)
    quad_tol = settings.get('quadrature_tolerance', 1e-10)
    result = cm_constants(precision, spec, registry)
    pi = mpmath.pi
    rows = [Comparison(name, getattr(result, name), _mpf(targets[name]), 0, tol)
            for name in ('a_star_1', 'theta_a_star_1', 'theta2_a_star_1') if name in targets]
    if 'c1_minus_4c0' in targets:
        rows.append(Comparison('c1_minus_4c0_closed', result.c1_minus_4c0_closed, _mpf(targets['c1_minus_4c0']),
                               0, tol))
    rows += [
        Comparison('c1_relation', result.c1_relation, result.c1_minus_4c0_closed, 0, tol),
        Comparison('c0_n2', result.c0_n2.value, mpmath.mpf(1) / 4, result.c0_n2.error_bound, quad_tol),
        Comparison('c1_minus_3c0_n2', result.c1_minus_3c0_n2.value, -6 / pi ** 2,
                   result.c1_minus_3c0_n2.error_bound, quad_tol),
        Comparison('c0_n3', result.c0_n3.value, mpmath.mpf(1) / 5, result.c0_n3.error_bound, quad_tol),
        Comparison('c1_minus_4c0_quadrature', result.c1_minus_4c0.value, result.c1_minus_4c0_closed,
                   result.c1_minus_4c0.error_bound, quad_tol),
    ]
    return rows


def asymptotic_rows(tolerance=1e-10, precision=256, registry=None):
    pi = mpmath.pi
    targets = {
        2: (1 / (mpmath.sqrt(3) * pi), mpmath.mpf(0)),
        3: (9 / (4 * pi ** 2) * mpmath.log(2), -3 / (8 * pi ** 2)),
    }
    rows = []
    for n, (alpha0, alpha1) in targets.items():
        result = asymptotic_constants(n, precision, registry)
        rows.append(Comparison(f"alpha0_n{n}", result.alpha0, alpha0, result.residual, tolerance))
        rows.append(Comparison(f"alpha1_n{n}", result.alpha1, alpha1, result.residual, tolerance))
    kappa, err = log_coefficient_at_one(precision, registry)
    # three-point extrapolation in s; its own spread is the error bound
    rows.append(Comparison('log_coefficient_at_one_n2', kappa, -3 / (4 * pi ** 2), 10 * err))
    return rows


def analytic_measure(n, precision=64):
    """m(1 + x_1 + ... + x_n) from the closed forms."""
    with mpmath.workprec(precision):
        if n == 1:
            return mpmath.mpf(0)
        if n == 2:
            return 3 * mpmath.sqrt(3) / (4 * mpmath.pi) * dirichlet_lvalue(CHI_M3, 2, precision).value
        if n == 3:
            return 7 * mpmath.zeta(3) / (2 * mpmath.pi ** 2)
        if n == 4:
            return RV_TARGET
    raise ValueError(f"No closed form for n = {n}")


def sampling_rows(samples, seed=1, batches=16, sigmas=3, executor=None, ns=(2, 3, 4)):
    rows = []
    for n in ns:
        estimate = mahler_direct(n, samples, seed, batches, executor)
        rows.append(Comparison(f"mahler_direct_n{n}", mpmath.mpf(estimate.value), analytic_measure(n),
                               estimate.stderr, sigmas * estimate.stderr))
    return rows


# -- driver ------------------------------------------------------------------

def _section(checks, name, run_all):
    entry = checks.get(name)
    if entry is None:
        return None
    if not entry.get('enabled', True) and not run_all:
        logger.debug("skipping disabled check group %s", name)
        return None
    return entry


def suite_plan(config, checks, registry=None, executor=None, run_all=False):
    """[(group name, checks.yaml entry, builder)] in checks.yaml order; builder(entry) returns rows."""
    precision = config.get('precision_bits', 256)
    order = config.get('series_order', 200)
    seed = config.get('seed', 1)
    spec = QuadratureSpec.from_config(config)
    sampling = config.get('sampling', {})

    builders = {
        'cterms': lambda e: cterm_rows(e.get('max_power', 12)),
        'operators': lambda e: ode_rows(e.get('max_power', 12)) + operator_rows(),
        'identities': lambda e: identity_rows(e.get('order', order), registry),
        'parametrizations': lambda e: parametrization_rows(e.get('order', 150), seed, registry),
        'moment_cases': lambda e: moment_rows(),
        'moment_oracle': lambda e: moment_oracle_rows(e.get('cases', 50), seed, e.get('order', 50),
                                                    e.get('max_degree', 3)),
        'cm_constants': lambda e: cm_rows(e, precision, spec, registry),
        'asymptotics': lambda e: asymptotic_rows(e.get('tolerance', 1e-10), precision, registry),
        'headline': lambda e: list(headline_checks(precision, spec, executor, e.get('checks')).comparisons),
        'sampling': lambda e: sampling_rows(sampling.get('samples', 2 ** 24), seed, sampling.get('batches', 16),
                                            e.get('sigmas', 3), executor),
    }
    plan = []
    for name in checks:
        if name not in builders:
            continue
        entry = _section(checks, name, run_all)
        if entry is not None:
            plan.append((name, entry, builders[name]))
    return plan
