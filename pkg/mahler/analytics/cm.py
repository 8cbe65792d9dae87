#!/usr/bin/env python3
"""
Constants attached to the CM points of the two parametrizations.

The moment c_0 of a* on [0, 1] and the combination c_1 - (n+1) c_0 are
integrals of f Dt along a vertical path. For L3 the path starts at the CM
point z = 1/2 + i sqrt(15)/6 of discriminant -15; for L2 it is the whole
imaginary axis. The values theta^j a*(1) are closed forms in Omega_15 and pi.

The behaviour of a* near lambda = 0 is read off from t a(t) at large t:
with x = log(-1/t), t a(t) = (alpha_1 / 2) x^2 + alpha_0 x + C + O(1/t).
"""

import logging
from dataclasses import dataclass

import mpmath
import sympy

from ..errors import UnsupportedLimitError
from ..forms.evaluate import parametrization_values
from ..forms.registry import PARAMETRIZATIONS, default_registry
from ..operators.cases import A_STAR_1, MOMENTS, THETA2_A_STAR_1, THETA_A_STAR_1, c1_relation
from ..operators.ratfunc import Omega
from ..series import D, alternate_signs
from .lvalues import chowla_selberg
from .quadrature import LValueResult, QuadratureSpec, axis_integral, integrate, series_tail_moment

logger = logging.getLogger(__name__)

# c_0 = WEIGHT * int s^k Re(f Dt) ds over the path, and c_1 - (n+1) c_0 with the factor (a t + b)
PATHS = {
    2: {'param': 'L2', 'real': 0, 'start': 0, 'weight': 18 / sympy.sqrt(3), 'power': 0, 'factor': (9, -3)},
    3: {'param': 'L3', 'real': sympy.Rational(1, 2), 'start': sympy.sqrt(15) / 6, 'weight': sympy.Integer(96),
        'power': 1, 'factor': (64, -4)},
}

# (param, Re z) of the path on which t -> -oo
ASYMPTOTIC_PATHS = {2: ('L2', mpmath.mpf(1) / 2), 3: ('L3', mpmath.mpf(0))}
MAX_HALVINGS = 60


def symbolic_value(expr, omega, precision=256):
    """An expression in pi, sqrt(d) and Omega at the numeric period."""
    dps = int(precision * 0.302) + 10
    with mpmath.workprec(precision):
        value = sympy.N(sympy.sympify(expr).subs(Omega, sympy.Float(mpmath.nstr(omega, dps), dps)), dps)
        return mpmath.mpf(str(value))


def _mpf(expr, precision):
    return mpmath.mpf(str(sympy.N(expr, int(precision * 0.302) + 10)))


def _series(n, registry, order, factor=None):
    """f Dt (times a t + b) as a q-series in the path variable."""
    data = PARAMETRIZATIONS[PATHS[n]['param']]
    t = registry.expansion(data['t'], order)
    f = registry.expansion(data['f'], order)
    series = f * D(t)
    if factor is not None:
        a, b = factor
        series = series * (t * a + b)
    series = series.normalized()
    return alternate_signs(series) if PATHS[n]['real'] else series


def _pointwise(n, registry, precision, factor=None):
    path = PATHS[n]
    x0 = _mpf(path['real'], precision)

    def fn(s):
        t, f, dt = parametrization_values(path['param'], mpmath.mpc(x0, s), precision, registry)
        value = f * dt
        if factor is not None:
            value *= factor[0] * t + factor[1]
        return value.real
    return fn


def _moment_from_cm_point(n, factor, spec, precision, registry):
    """WEIGHT * int_start^oo s^k Re(f Dt ...)(1/2 + is) ds, cross-checked against the q-series."""
    path = PATHS[n]
    k = path['power']
    start = _mpf(path['start'], precision)
    weight = _mpf(path['weight'], precision)
    fn = _pointwise(n, registry, precision, factor)
    with mpmath.workprec(precision):
        value, err = integrate(lambda s: s ** k * fn(s), start, mpmath.inf, spec, precision)
        closed = series_tail_moment(_series(n, registry, spec.tail_order, factor), k, start, precision)
        bound = weight * (abs(value - closed) + abs(err))
    return LValueResult(weight * value, bound, 'nested-quadrature',
                        {'path': f"Re z = {path['real']}", 'series_value': mpmath.nstr(weight * closed, 25)})


def _moment_on_axis(n, factor, spec, precision, registry):
    """WEIGHT * int_0^oo Re(f Dt ...)(is) ds split at the quadrature split point."""
    path = PATHS[n]
    weight = _mpf(path['weight'], precision)
    value, bound = axis_integral(_pointwise(n, registry, precision, factor),
                                 _series(n, registry, spec.tail_order, factor),
                                 path['power'], spec, precision, name=f"f Dt for {path['param']}")
    return LValueResult(weight * value, weight * bound, 'nested-quadrature', {'path': 'Re z = 0'})


def moments(n, spec=None, precision=256, registry=None):
    """(c_0, c_1 - (n+1) c_0) by quadrature."""
    spec = spec or QuadratureSpec()
    registry = registry or default_registry()
    if n not in PATHS:
        raise ValueError(f"moments are defined for n = 2, 3; got {n}")
    method = _moment_on_axis if PATHS[n]['start'] == 0 else _moment_from_cm_point
    return (method(n, None, spec, precision, registry),
            method(n, PATHS[n]['factor'], spec, precision, registry))


@dataclass(frozen=True)
class CMConstants:
    omega: object
    a_star_1: object
    theta_a_star_1: object
    theta2_a_star_1: object
    c1_relation: object
    c1_minus_4c0_closed: object
    c0_n2: LValueResult
    c1_minus_3c0_n2: LValueResult
    c0_n3: LValueResult
    c1_minus_4c0: LValueResult

    def to_json(self, digits=30):
        closed = {k: mpmath.nstr(getattr(self, k), digits) for k in
                  ('omega', 'a_star_1', 'theta_a_star_1', 'theta2_a_star_1', 'c1_relation', 'c1_minus_4c0_closed')}
        quad = {k: getattr(self, k).to_json(digits) for k in ('c0_n2', 'c1_minus_3c0_n2', 'c0_n3', 'c1_minus_4c0')}
        return {'closed_form': closed, 'quadrature': quad}


def cm_constants(precision=256, spec=None, registry=None):
    """Closed forms for theta^j a*(1) and quadratures for the first moments."""
    spec = spec or QuadratureSpec()
    registry = registry or default_registry()
    omega = chowla_selberg(precision)
    c0_n2, d_n2 = moments(2, spec, precision, registry)
    c0_n3, d_n3 = moments(3, spec, precision, registry)
    result = CMConstants(
        omega=omega,
        a_star_1=symbolic_value(A_STAR_1, omega, precision),
        theta_a_star_1=symbolic_value(THETA_A_STAR_1, omega, precision),
        theta2_a_star_1=symbolic_value(THETA2_A_STAR_1, omega, precision),
        c1_relation=symbolic_value(c1_relation(), omega, precision),
        c1_minus_4c0_closed=symbolic_value(MOMENTS['thm2'][1], omega, precision),
        c0_n2=c0_n2, c1_minus_3c0_n2=d_n2, c0_n3=c0_n3, c1_minus_4c0=d_n3,
    )
    logger.debug("CM constants: a*(1) = %s, c0 = %s / %s", mpmath.nstr(result.a_star_1, 20),
                 mpmath.nstr(c0_n2.value, 15), mpmath.nstr(c0_n3.value, 15))
    return result


# -- behaviour of a* at the endpoints ----------------------------------------------

@dataclass(frozen=True)
class AsymptoticConstants:
    n: int
    alpha0: object
    alpha1: object
    residual: object
    y: object

    def to_json(self):
        return {'n': self.n, 'alpha0': mpmath.nstr(self.alpha0, 25), 'alpha1': mpmath.nstr(self.alpha1, 25),
                'residual': mpmath.nstr(self.residual, 5), 'y': mpmath.nstr(self.y, 10)}


def _t_times_a(param, x0, y, precision, registry):
    t, f, _ = parametrization_values(param, mpmath.mpc(x0, y), precision, registry)
    return t.real, (t * f).real


def asymptotic_constants(n, precision=256, registry=None):
    """alpha_0, alpha_1 of a*(lambda) = alpha_0 + alpha_1 log(lambda) + ... at lambda = 0.

    y is halved until |1/t| < 2^(-precision/3); the quadratic in log(-1/t) is
    fitted at y, 0.9y, 0.8y and tested at 0.7y.
    """
    registry = registry or default_registry()
    if n not in ASYMPTOTIC_PATHS:
        raise ValueError(f"asymptotic_constants supports n = 2, 3; got {n}")
    param, x0 = ASYMPTOTIC_PATHS[n]
    with mpmath.workprec(precision + 20):
        threshold = mpmath.ldexp(1, -(precision // 3))
        y = mpmath.mpf(1) / 2
        for _ in range(MAX_HALVINGS):
            t, _ = _t_times_a(param, x0, y, precision, registry)
            if abs(t) > 1 / threshold:
                break
            y /= 2
        else:
            raise UnsupportedLimitError(f"t does not grow along Re z = {x0} for {param}")
        rows, rhs = [], []
        for scale in ('1', '0.9', '0.8'):
            t, value = _t_times_a(param, x0, y * mpmath.mpf(scale), precision, registry)
            x = mpmath.log(-1 / t)
            rows.append([x ** 2, x, 1])
            rhs.append(value)
        A, B, C = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        t, value = _t_times_a(param, x0, y * mpmath.mpf('0.7'), precision, registry)
        x = mpmath.log(-1 / t)
        residual = abs(A * x ** 2 + B * x + C - value)
    logger.debug("asymptotics for n=%d at y=%s: A=%s B=%s", n, mpmath.nstr(y, 5), mpmath.nstr(A, 15), mpmath.nstr(B, 15))
    return AsymptoticConstants(n, +B, 2 * A, residual, y)


def log_coefficient_at_one(precision=256, registry=None, s_values=('0.05', '0.04', '0.03')):
    """Coefficient of log(1 - lambda) in a* at lambda = 1 for the L2 case.

    sqrt(3) pi log(1 - 9 t2(is)) / f2(is) is linear in s as s -> 0; the
    coefficient is the reciprocal of its intercept. Returns (value, error).
    """
    registry = registry or default_registry()
    with mpmath.workprec(precision + 20):
        points = []
        for s in s_values:
            s = mpmath.mpf(s)
            t, f, _ = parametrization_values('L2', mpmath.mpc(0, s), precision, registry)
            points.append((s, (mpmath.sqrt(3) * mpmath.pi * mpmath.log(1 - 9 * t) / f).real))
        intercepts = [(s2 * q1 - s1 * q2) / (s2 - s1) for (s1, q1), (s2, q2) in zip(points, points[1:])]
        kappas = [1 / c for c in intercepts]
    return +kappas[-1], abs(kappas[-1] - kappas[0])
