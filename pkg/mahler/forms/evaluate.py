#!/usr/bin/env python3
"""
Pointwise evaluation of registry forms in the upper half-plane.

Eta quotients go through eta_value, so accuracy does not degrade as Im(z)
shrinks. Eisenstein series are evaluated through their eta-quotient forms,
G2 through the quasi-modular transformation of E2. Pullback forms are
assembled from t(z), f(z) and Dt(z), with Dt taken from the algebraic
relation

    (Dt / (t f^f_power))^power = poly(t)

and, for power 2, the square-root branch continued down from the cusp.
"""

import logging
from fractions import Fraction

import mpmath

from ..errors import BranchError, PoleError, PrecisionError, RecipeError
from ..series import D, QSeries
from .eisenstein import eisenstein_spec
from .eta import MIN_PRECISION, EtaQuotient, eta_multiplier, eta_value, reduce_point, to_mpf_fraction
from .registry import PARAMETRIZATIONS, default_registry

logger = logging.getLogger(__name__)

# Eisenstein series evaluated through an eta-quotient identity
ETA_ROUTES = {
    'E4': 'E4_eta',
    'E3chi': 'E3chi_eta',
    'E3chi_tilde': 'E3chi_tilde_eta',
    'E1': 'E1_eta',
}

BRANCH_TOP = 2
BRANCH_STEPS = 16
BRANCH_MAX_HALVINGS = 12


class _Point:
    """Evaluation context: eta(d z) values are shared between factors."""

    def __init__(self, precision):
        self.precision = precision
        self._eta = {}

    def eta(self, tau):
        key = (mpmath.nstr(tau.real, 40), mpmath.nstr(tau.imag, 40))
        if key not in self._eta:
            self._eta[key] = eta_value(tau, self.precision)
        return self._eta[key]


def form_value(spec, z, precision=256, registry=None):
    """Value of a registry form (name or recipe) at z, to `precision` bits."""
    if precision < MIN_PRECISION:
        raise PrecisionError(f"form_value needs at least {MIN_PRECISION} bits, got {precision}")
    registry = registry or default_registry()
    with mpmath.workprec(precision + 20):
        z = mpmath.mpc(z)
        if z.imag <= 0:
            raise ValueError(f"form_value needs Im(z) > 0, got {z}")
        value = _value(registry, spec, z, _Point(precision + 20))
    return +value


def _value(registry, spec, z, point):
    recipe = registry.resolve(spec)
    kind = recipe.get('kind')
    if kind == 'eta':
        eq = EtaQuotient.from_dict(recipe)
        value = mpmath.mpc(1)
        for d, k in eq.factors:
            value *= point.eta(d * z) ** k
        return to_mpf_fraction(Fraction(recipe.get('coeff', '1'))) * value
    if kind == 'eisenstein':
        name = recipe['name']
        if name == 'G2':
            return g2_value(z, point.precision)
        if name in ETA_ROUTES:
            return _value(registry, ETA_ROUTES[name], z, point)
        eisenstein_spec(name)
        raise RecipeError(f"No pointwise route for Eisenstein series '{name}'")
    if kind == 'linear':
        return mpmath.fsum(
            to_mpf_fraction(Fraction(t['coeff'])) * _value(registry, t['form'], int(t.get('scale', 1)) * z, point)
            for t in recipe['terms'])
    if kind == 'product':
        value = mpmath.mpc(1)
        for factor in recipe['factors']:
            value *= _value(registry, factor, z, point)
        return value
    if kind == 'pullback':
        return _pullback_value(registry, recipe, z, point)
    raise RecipeError(f"Unknown recipe kind: {kind!r}")


def _polyval(coeffs, t):
    """Ascending coefficient list at t."""
    return mpmath.polyval([to_mpf_fraction(Fraction(c)) for c in reversed(coeffs)], t)


def _pullback_value(registry, recipe, z, point):
    if recipe.get('shift_half'):
        z = z + mpmath.mpf(1) / 2
    t, f, dt = _parametrization(registry, recipe['param'], z, point)
    den = _polyval(recipe['den'], t)
    tol = mpmath.ldexp(1, -(point.precision // 2))
    if abs(den) < tol:
        raise PoleError(f"Pullback denominator vanishes at z = {mpmath.nstr(z, 15)} (t = {mpmath.nstr(t, 15)})")
    return _polyval(recipe['num'], t) / den * dt * f


def _parametrization(registry, param, z, point):
    data = PARAMETRIZATIONS[param]
    t = _value(registry, data['t'], z, point)
    f = _value(registry, data['f'], z, point)
    rel = data['dt_relation']
    if rel['power'] == 1:
        root = _polyval(rel['poly'], t)
    else:
        root = _continued_root(registry, param, z, point)
    return t, f, t * f ** rel['f_power'] * root


def parametrization_values(param, z, precision=256, registry=None):
    """(t(z), f(z), Dt(z)) for the L2 or L3 parametrization."""
    registry = registry or default_registry()
    if param not in PARAMETRIZATIONS:
        raise RecipeError(f"Unknown parametrization '{param}'")
    with mpmath.workprec(precision + 20):
        values = _parametrization(registry, param, mpmath.mpc(z), _Point(precision + 20))
    return tuple(+v for v in values)


def dt_value(param, z, precision=256, registry=None):
    return parametrization_values(param, z, precision, registry)[2]


def _root_poly(registry, param, z, point):
    data = PARAMETRIZATIONS[param]
    t = _value(registry, data['t'], z, point)
    return _polyval(data['dt_relation']['poly'], t)


def _continued_root(registry, param, z, point):
    """power-th root of poly(t(z)), continued along Re(z) = const from the cusp.

    At the cusp t -> 0 and poly(t) -> 1, where the principal root is the
    branch matching the q-expansion of Dt.
    """
    power = PARAMETRIZATIONS[param]['dt_relation']['power']
    w = _root_poly(registry, param, z, point)
    eps = mpmath.ldexp(1, -(point.precision // 2))
    if abs(w.imag) <= eps * abs(w) and w.real > 0 and _positive_along_axis(registry, param, z, point):
        return mpmath.root(w.real, power)
    x, y_end = z.real, z.imag
    y = max(mpmath.mpf(BRANCH_TOP), y_end)
    prev = mpmath.root(_root_poly(registry, param, mpmath.mpc(x, y), point), power)
    step = (y - y_end) / BRANCH_STEPS
    units = mpmath.unitroots(power)
    halvings = 0
    while y > y_end:
        y_next = max(y - step, y_end)
        cand = mpmath.root(_root_poly(registry, param, mpmath.mpc(x, y_next), point), power)
        best = min((cand * u for u in units), key=lambda r: abs(r - prev))
        if abs(best - prev) > abs(prev) / 4:
            halvings += 1
            if halvings > BRANCH_MAX_HALVINGS:
                raise BranchError(f"Root of poly(t) jumps near z = {mpmath.nstr(mpmath.mpc(x, y_next), 15)}")
            step /= 2
            continue
        prev, y = best, y_next
    logger.debug("continued %s root to z = %s", param, mpmath.nstr(z, 10))
    return prev


def _positive_along_axis(registry, param, z, point):
    """poly(t) stays real positive on the vertical path to the cusp.

    True on the line Re(z) = 0, and on Re(z) = 1/2 above the elliptic point
    1/2 + i sqrt(3)/6, where t is real and poly(t(z)) decreases from 1
    without crossing zero until its first root.
    """
    frac = z.real - mpmath.floor(z.real)
    if frac == 0:
        return True
    return frac * 2 == 1 and z.imag > mpmath.sqrt(3) / 6


def g2_value(z, precision=256):
    """G2 = -1/24 + sum sigma_1(n) q^n, i.e. -E2/24, at z."""
    return -e2_value(z, precision) / 24


def e2_value(z, precision=256):
    """E2(z) from the reduced point with E2(M t) = (ct+d)^2 E2(t) - (6ic/pi)(ct+d)."""
    with mpmath.workprec(precision + 20):
        tau = mpmath.mpc(z)
        tau_r, (a, b, c, d) = reduce_point(tau)
        mc, md = -c, a
        j = mc * tau_r + md
        value = j ** 2 * _e2_series(tau_r, precision + 20) - 6j * mc / mpmath.pi * j
    return +value


def _e2_series(tau, prec):
    """1 - 24 sum n q^n / (1 - q^n) for Im(tau) >= sqrt(3)/2."""
    q = mpmath.exp(2j * mpmath.pi * tau)
    eps = mpmath.ldexp(1, -prec)
    total = mpmath.mpc(0)
    n = 1
    qn = q
    while True:
        total += n * qn / (1 - qn)
        if n * abs(qn) < eps:
            break
        n += 1
        qn *= q
    return 1 - 24 * total


def series_value(spec, z, order=200, registry=None, precision=256):
    """Direct summation of the truncated q-expansion at z."""
    registry = registry or default_registry()
    return registry.expansion(spec, order).evaluate_at(z, precision)


def derive_dt_relation(param, order=60, max_degree=8, registry=None):
    """Polynomial P with (Dt/(t f^f_power))^power = P(t), found by t-adic matching.

    Returns the ascending coefficient list. The match is certified exactly
    to the series order; a residual that does not vanish raises RecipeError.
    """
    registry = registry or default_registry()
    data = PARAMETRIZATIONS[param]
    rel = data['dt_relation']
    t = registry.expansion(data['t'], order).normalized()
    f = registry.expansion(data['f'], order)
    lhs = (D(t) / (t * f ** rel['f_power'])) ** rel['power']
    lead = t.coeff(1)
    poly = []
    residual = lhs
    t_power = QSeries.constant(1, order)
    for k in range(max_degree + 1):
        c = residual.coeff(k) / lead ** k
        poly.append(c)
        residual = residual - t_power * c
        t_power = t_power * t
    if residual.valuation is not None:
        raise RecipeError(f"{param}: Dt relation has no polynomial of degree <= {max_degree} "
                          f"(residual at q^{residual.valuation})")
    while poly and poly[-1] == 0:
        poly.pop()
    logger.debug("%s Dt relation: %s", param, poly)
    return poly
