#!/usr/bin/env python3
"""
Mahler measures and their relations to single and double L-values.

Each check produces Comparison rows (computed, target, bound). The checks
are independent of one another and can run through an executor; the rows
come back in check order.
"""

import logging
from dataclasses import dataclass, field

import mpmath
import sympy

from ..forms.characters import CHI_M3
from ..forms.evaluate import form_value
from ..forms.registry import default_registry
from ..operators.cases import thm2_solution
from ..operators.ratfunc import Omega
from ..series import D_inv_power
from .double import decay_profile, double_lvalue_holo, double_lvalue_merom
from .lvalues import (
    chowla_selberg, cusp_lvalue_direct, cusp_lvalue_mellin, dirichlet_lvalue, eichler_extrapolate,
    eisenstein_bracket, eisenstein_decomposition, fit_fricke_constant, lvalue_single, rv_constant,
)
from .quadrature import QuadratureSpec

logger = logging.getLogger(__name__)

# m(1 + x_1 + ... + x_4), half of m(P_4)
RV_TARGET = mpmath.mpf('0.544412561752185')
RELATION_TOLERANCE = 1e-10
COR2_TOLERANCE = 1e-8
RV_TOLERANCE = 1e-10
EICHLER_TOLERANCE = 1e-8


@dataclass(frozen=True)
class Comparison:
    name: str
    computed: object
    target: object
    error_bound: object
    tolerance: object = None
    kind: str = 'numeric'

    @property
    def difference(self):
        if self.kind == 'exact':
            return 0 if self.computed == self.target else 1
        return abs(mpmath.mpmathify(self.computed) - mpmath.mpmathify(self.target))

    @property
    def passed(self):
        if self.kind == 'exact':
            return self.computed == self.target
        limit = self.tolerance if self.tolerance is not None else self.error_bound
        return self.difference <= limit

    def to_row(self, digits=20):
        def fmt(v):
            if isinstance(v, (mpmath.mpf, mpmath.mpc)):
                return mpmath.nstr(v, digits)
            return str(v)
        tolerance = self.tolerance if self.tolerance is not None else self.error_bound
        return {'check': self.name, 'computed': fmt(self.computed), 'target': fmt(self.target),
                'tolerance': float(tolerance) if tolerance is not None else None,
                'pass': bool(self.passed), 'kind': self.kind}


def _consts(precision):
    with mpmath.workprec(precision + 20):
        lchi = dirichlet_lvalue(CHI_M3, 2, precision).value
        return {
            'lchi': lchi,
            'm2': 3 * mpmath.sqrt(3) / (2 * mpmath.pi) * lchi,
            'm3': 7 * mpmath.zeta(3) / mpmath.pi ** 2,
            'relation': 3 * mpmath.sqrt(3) * mpmath.pi / 16 * lchi - mpmath.mpf(7) / 6 * mpmath.zeta(3),
        }


def mahler_via_lvalue(n, precision=256, registry=None):
    """m(P_n) = -L(g, 1) for n = 2 (weight 3) and n = 3 (weight 4)."""
    forms = {2: ('g1w3', 'm2'), 3: ('g1w4', 'm3')}
    if n not in forms:
        raise ValueError(f"mahler_via_lvalue supports n = 2, 3; got {n}")
    form, key = forms[n]
    result = lvalue_single(form, 1, precision, registry)
    return Comparison(f"mahler_n{n}", -result.value, _consts(precision)[key], result.error_bound)


def cor1_check(precision=256, spec=None, registry=None):
    """m(P3) - (3/4) m(P2) = -(6/pi^2) L(g2, g1, 2, 1) in weight 3."""
    c = _consts(precision)
    double = double_lvalue_holo('g2w3', 'g1w3', 2, 1, spec, precision, registry)
    computed = -6 / mpmath.pi ** 2 * double.value
    return Comparison('cor1', computed, c['m3'] - mpmath.mpf(3) / 4 * c['m2'],
                      6 / mpmath.pi ** 2 * double.error_bound, RELATION_TOLERANCE)


def relation_check(precision=256, spec=None, registry=None):
    double = double_lvalue_holo('g2w3', 'g1w3', 2, 1, spec, precision, registry)
    return Comparison('double_lvalue_relation', double.value, _consts(precision)['relation'],
                      double.error_bound, RELATION_TOLERANCE)


def cor2_check(precision=256, spec=None, registry=None):
    """2 (RV constant) - (4/5) m(P3) against the Omega-weighted pair of double L-values."""
    c = _consts(precision)
    omega = chowla_selberg(precision)
    l2 = double_lvalue_merom(2, spec, precision, registry)
    l3 = double_lvalue_merom(3, spec, precision, registry)
    with mpmath.workprec(precision):
        w3 = 3 * mpmath.sqrt(5) * omega ** 2 / (10 * mpmath.pi)
        w2 = 3 * mpmath.sqrt(5) / (5 * mpmath.pi ** 3 * omega ** 2)
        rhs = w3 * l3.value - w2 * l2.value
        lhs = 2 * RV_TARGET - mpmath.mpf(4) / 5 * c['m3']
        bound = w3 * l3.error_bound + w2 * l2.error_bound
    return [
        Comparison('double_lvalue_g2', l2.value, mpmath.mpf('-0.44662442'), l2.error_bound, 5e-9),
        Comparison('double_lvalue_g3', l3.value, mpmath.mpf('8.5383217'), l3.error_bound, 5e-8),
        Comparison('cor2', rhs, lhs, bound, COR2_TOLERANCE),
    ]


def rv_check(precision=256, registry=None, direct_terms=2000):
    """6 (sqrt(15)/(2 pi))^5 L(f15, 4) with two independent L-value methods."""
    fricke = fit_fricke_constant('f15', precision, registry=registry)
    mellin = cusp_lvalue_mellin('f15', 4, precision, registry, fricke)
    direct = cusp_lvalue_direct('f15', 4, direct_terms, registry)
    rows = [
        Comparison('rv_constant', rv_constant(mellin.value, precision), RV_TARGET,
                   rv_constant(mellin.error_bound, precision), RV_TOLERANCE),
        Comparison('f15_methods_agree', direct.value, mellin.value, direct.error_bound + mellin.error_bound),
    ]
    if fricke.predicted is not None:
        rows.append(Comparison('fricke_constant', fricke.constant, fricke.predicted, fricke.spread, 1e-20))
    return rows


@dataclass(frozen=True)
class EisensteinChain:
    lf1: object
    lf1f2hat: object
    chain: object
    target: object
    identities: tuple = field(default_factory=tuple)

    @property
    def holds(self):
        return sympy.simplify(self.chain - self.target) == 0 and all(r.equal for r in self.identities)


def eisenstein_chain(order=200, registry=None):
    """-(sqrt3/2pi) L(f1, 2) + (9/2pi^2) L(f1 f2hat, 3) in closed form, with L(chi_-3, 2) kept symbolic."""
    registry = registry or default_registry()
    lchi, z3 = sympy.Symbol('L_chi3_2'), sympy.zeta(3)
    pi = sympy.pi

    def bracket(name, s):
        value = eisenstein_bracket(eisenstein_decomposition(name, registry), s)
        return sympy.Rational(value.numerator, value.denominator)

    lf1 = bracket('f1', 2) * sympy.zeta(2) * lchi
    lf1f2hat = bracket('f1f2hat', 3) * z3 * sympy.zeta(2)
    chain = sympy.simplify(-sympy.sqrt(3) / (2 * pi) * lf1 + 9 / (2 * pi ** 2) * lf1f2hat)
    target = 3 * sympy.sqrt(3) * pi / 16 * lchi - sympy.Rational(7, 6) * z3
    identities = tuple(registry.identity_check(lhs, rhs, order) for lhs, rhs in
                       (('E1', 'E1_eta'), ('f2sec7', 'f2sec7_eta'), ('f2hat', 'f2hat_eta'), ('f1f2hat', 'f1f2hat_eis')))
    logger.debug("Eisenstein chain: %s", chain)
    return EisensteinChain(sympy.simplify(lf1), sympy.simplify(lf1f2hat), chain, target, identities)


def eisenstein_chain_rows(order=200, registry=None):
    result = eisenstein_chain(order, registry)
    pi, lchi = sympy.pi, sympy.Symbol('L_chi3_2')
    rows = [
        Comparison('L(f1,2)', str(result.lf1), str(sympy.simplify(-sympy.Rational(3, 8) * pi ** 2 * lchi)), 0,
                   kind='exact'),
        Comparison('L(f1*f2hat,3)', str(result.lf1f2hat), str(sympy.simplify(-7 * pi ** 2 / 27 * sympy.zeta(3))), 0,
                   kind='exact'),
        Comparison('eisenstein_chain', str(result.chain), str(sympy.simplify(result.target)), 0, kind='exact'),
    ]
    rows += [Comparison(f"identity {r.lhs} = {r.rhs}", r.equal, True, 0, kind='exact') for r in result.identities]
    return rows


def cor2_pointwise_identity(z0, order=200, precision=256, registry=None):
    """|b(t(z0)) - (4/5) f(z0) - f(z0) D^-3(w3 g3 - w2 g2)(z0)| with b the L3 moment solution."""
    registry = registry or default_registry()
    z0 = mpmath.mpc(z0)
    if z0.imag < 1:
        raise ValueError(f"cor2_pointwise_identity needs Im(z0) >= 1, got {z0}")
    omega = chowla_selberg(precision)
    dps = int(precision * 0.302) + 10
    b = thm2_solution(order).numeric({Omega: sympy.Float(mpmath.nstr(omega, dps), dps)}, precision)
    with mpmath.workprec(precision + 20):
        t = form_value('t3', z0, precision, registry)
        f = form_value('f3', z0, precision, registry)
        lhs = b.evaluate_q(t)
        w3 = -3 * mpmath.sqrt(5) * omega ** 2 / (10 * mpmath.pi)
        w2 = 3 * mpmath.sqrt(5) / (5 * mpmath.pi ** 3 * omega ** 2)
        g3 = registry.expansion('g3w4', order).to_float(precision + 20)
        g2 = registry.expansion('g2w4', order).to_float(precision + 20)
        integral = D_inv_power(g3 * w3 + g2 * w2, 3).evaluate_at(z0, precision + 20)
        rhs = mpmath.mpf(4) / 5 * f + f * integral
    return abs(lhs - rhs)


def eichler_check(precision=256, registry=None):
    result = eichler_extrapolate('g1w4', precision=precision, registry=registry)
    return Comparison('eichler_limit_g1w4', result.value, -_consts(precision)['m3'], result.error_bound,
                      EICHLER_TOLERANCE)


def decay_rows(registry=None):
    rows = []
    for form in ('g2w4', 'g3w4'):
        profile = decay_profile(form, registry=registry)
        rows.append(Comparison(f"decay_{form}", profile.bounded, True, 0, kind='exact'))
    return rows


def _as_list(value):
    return value if isinstance(value, list) else [value]


CHECKS = {
    'mahler_n2': lambda p, spec: mahler_via_lvalue(2, p),
    'mahler_n3': lambda p, spec: mahler_via_lvalue(3, p),
    'cor1': lambda p, spec: cor1_check(p, spec),
    'relation': lambda p, spec: relation_check(p, spec),
    'cor2': lambda p, spec: cor2_check(p, spec),
    'rv': lambda p, spec: rv_check(p),
    'eisenstein_chain': lambda p, spec: eisenstein_chain_rows(),
    'cor2_pointwise': lambda p, spec: Comparison('cor2_pointwise_i', cor2_pointwise_identity(1j, precision=p), 0,
                                                 0, 1e-10),
    'eichler': lambda p, spec: eichler_check(p),
    'decay': lambda p, spec: decay_rows(),
}


def run_check(task):
    """(name, precision, spec) -> [Comparison]; module level so process pools can pickle it."""
    name, precision, spec = task
    logger.debug("running headline check %s", name)
    return _as_list(CHECKS[name](precision, spec))


@dataclass(frozen=True)
class HeadlineReport:
    comparisons: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.comparisons)

    @property
    def first_failure(self):
        return next((c for c in self.comparisons if not c.passed), None)

    def rows(self):
        return [c.to_row() for c in self.comparisons]


def headline_checks(precision=256, spec=None, executor=None, names=None):
    """Run the named checks (all by default) and collect their rows in order."""
    spec = spec or QuadratureSpec()
    names = list(names or CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown headline checks: {', '.join(unknown)}")
    tasks = [(n, precision, spec) for n in names]
    results = executor.map(run_check, tasks) if executor is not None else [run_check(t) for t in tasks]
    comparisons = tuple(c for rows in results for c in rows)
    report = HeadlineReport(comparisons)
    if report.first_failure is not None:
        logger.debug("first failing headline check: %s", report.first_failure.name)
    return report
