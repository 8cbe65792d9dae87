#!/usr/bin/env python3
"""
Double L-values of pairs of forms.

    L(g1, g2, p, s2) = (2 pi)^(p+s2) / (Gamma(p) Gamma(s2))
                       * int_0^oo t^(s2-1) g2(it) int_t^oo (v-t)^(p-1) g1(iv) dv dt

For integer p the inner kernel K(t) = int_t^oo (v-t)^(p-1) g1(iv) dv expands
binomially into moments B_k(t) = int_t^oo v^k g1(iv) dv, each entering with
sign (-1)^(p-1-k). Beyond the split point everything is a q-series; below it
the moments are cumulative Chebyshev integrals of pointwise values.
"""

import logging
from dataclasses import dataclass
from math import comb

import mpmath

from ..errors import PoleError, SeriesDomainError
from ..forms.evaluate import form_value, parametrization_values
from ..forms.registry import default_registry
from ..series import D_inv_power
from .quadrature import (
    ChebyshevGrid, LValueResult, QuadratureSpec, check_vanishing_at_zero, series_tail_moment, tail_bound,
)

logger = logging.getLogger(__name__)

MEROMORPHIC_INNER = {2: 'g2w4', 3: 'g3w4'}


def _on_axis(spec, registry, precision):
    def fn(x):
        if x == 0:
            return mpmath.mpf(0)
        return form_value(spec, mpmath.mpc(0, x), precision, registry).real
    return fn


def _tail(inner_series, outer_series, p, s2, split):
    """int_split^oo t^(s2-1) g2(it) K(t) dt from h = g2 * D^-p g1."""
    h = outer_series * D_inv_power(inner_series, p)
    value = mpmath.gamma(p) * (2 * mpmath.pi) ** (-p) * series_tail_moment(h, s2 - 1, split)
    return value, tail_bound(h, split)


def _head(inner, outer, inner_series, p, s2, spec, precision, registry):
    """int_0^split t^(s2-1) g2(it) K(t) dt on a geometric Chebyshev grid."""
    split = mpmath.mpf(spec.split_point)
    grid = ChebyshevGrid.geometric(split, spec.panels, spec.ratio, spec.degree, precision)
    nodes = grid.panel_nodes()
    g1 = grid.sample(_on_axis(inner, registry, precision))
    g2 = grid.sample(_on_axis(outer, registry, precision))

    with mpmath.workprec(precision):
        kernel = [[mpmath.mpf(0)] * len(panel) for panel in nodes]
        for k in range(p):
            weighted = [[x ** k * v for x, v in zip(xs, vs)] for xs, vs in zip(nodes, g1)]
            running = grid.cumulative(weighted)
            total = running[-1][-1]
            at_split = series_tail_moment(inner_series, k, split, precision)
            binom = comb(p - 1, k)
            for i, xs in enumerate(nodes):
                for j, x in enumerate(xs):
                    moment = at_split + total - running[i][j]
                    kernel[i][j] += binom * (-x) ** (p - 1 - k) * moment
        integrand = [[x ** (s2 - 1) * a * b for x, a, b in zip(xs, outer_vals, kvals)]
                     for xs, outer_vals, kvals in zip(nodes, g2, kernel)]
        check_vanishing_at_zero(grid, integrand, 'double L-value integrand')
        return grid.integral(integrand)


def _iterated(inner, outer, p, s2, spec, precision, registry):
    inner_series = registry.expansion(inner, spec.tail_order)
    outer_series = registry.expansion(outer, spec.tail_order)
    with mpmath.workprec(precision + 20):
        head = _head(inner, outer, inner_series, p, s2, spec, precision + 20, registry)
        tail, tail_err = _tail(inner_series, outer_series, p, s2, mpmath.mpf(spec.split_point))
        prefactor = (2 * mpmath.pi) ** (p + s2) / (mpmath.gamma(p) * mpmath.gamma(s2))
        bound = prefactor * (tail_err + tail_bound(inner_series, spec.split_point))
        return prefactor * (head + tail), bound


def iterated_lvalue(inner, outer, p, s2, spec=None, precision=256, registry=None):
    """L(inner, outer, p, s2) for integers p >= 1, s2 >= 1.

    The error bound is the change under a refined grid plus the q-series
    truncation bounds.
    """
    if p < 1 or s2 < 1:
        raise ValueError(f"iterated_lvalue needs p >= 1 and s2 >= 1, got p={p}, s2={s2}")
    spec = spec or QuadratureSpec()
    spec.check_precision(precision)
    registry = registry or default_registry()
    value, bound = _iterated(inner, outer, p, s2, spec, precision, registry)
    check, _ = _iterated(inner, outer, p, s2, spec.refined(), precision, registry)
    error = abs(value - check) + bound
    logger.debug("L(%s, %s, %d, %d) = %s +- %s", inner, outer, p, s2, mpmath.nstr(value, 20), mpmath.nstr(error, 3))
    return LValueResult(+check, error, 'nested-quadrature',
                        {'inner': inner, 'outer': outer, 'p': p, 's2': s2, 'split_point': spec.split_point})


def double_lvalue_holo(inner, outer, p, s2, spec=None, precision=256, registry=None):
    """Double L-value of holomorphic forms; 1/Gamma(s2) makes s2 <= 0 vanish."""
    registry = registry or default_registry()
    constant = registry.expansion(inner, 8).coeff(0)
    if constant != 0:
        raise SeriesDomainError(f"Inner form {inner} must vanish at infinity (constant term {constant})")
    if s2 <= 0:
        return LValueResult(mpmath.mpf(0), mpmath.ldexp(1, -precision), 'closed-form',
                            {'inner': inner, 'outer': outer, 'p': p, 's2': s2})
    return iterated_lvalue(inner, outer, p, s2, spec, precision, registry)


def _assert_no_axis_pole(spec, precision, registry):
    """1 - t3(ix) stays away from zero on every grid node."""
    split = mpmath.mpf(spec.split_point)
    tol = mpmath.ldexp(1, -(precision // 4))
    grid = ChebyshevGrid.geometric(split, spec.panels, spec.ratio, spec.degree, precision)
    for x in grid.nodes():
        if x == 0:
            continue
        t, _, _ = parametrization_values('L3', mpmath.mpc(0, x), precision, registry)
        if abs(1 - t) <= tol:
            raise PoleError(f"1 - t3 vanishes on the imaginary axis near s = {mpmath.nstr(x, 10)}")


def double_lvalue_merom(j, spec=None, precision=256, registry=None):
    """L(g_j, g1, 3, 1) for the weight-4 forms with (1-t)^-1 and (1-t)^-3 factors."""
    if j not in MEROMORPHIC_INNER:
        raise ValueError(f"double_lvalue_merom supports j in {sorted(MEROMORPHIC_INNER)}, got {j}")
    spec = spec or QuadratureSpec()
    registry = registry or default_registry()
    _assert_no_axis_pole(spec, precision, registry)
    return iterated_lvalue(MEROMORPHIC_INNER[j], 'g1w4', 3, 1, spec, precision, registry)


@dataclass(frozen=True)
class DecayProfile:
    form: str
    samples: tuple
    bound: object

    @property
    def bounded(self):
        """The scaled modulus does not grow over the second half of the range."""
        half = len(self.samples) // 2
        early = max(r for _, r in self.samples[:half + 1])
        late = max(r for _, r in self.samples[half:])
        return late <= early * mpmath.mpf(3) / 2

    def to_json(self):
        return {'form': self.form, 'bound': mpmath.nstr(self.bound, 10),
                'samples': [[mpmath.nstr(s, 6), mpmath.nstr(r, 15)] for s, r in self.samples]}


def decay_profile(spec='g2w4', start=1, stop=6, points=11, precision=128, registry=None):
    """|g(is)| e^(2 pi s) on [start, stop]: bounded for a form with q-order one."""
    registry = registry or default_registry()
    samples = []
    with mpmath.workprec(precision):
        for i in range(points):
            s = mpmath.mpf(start) + (mpmath.mpf(stop) - start) * i / (points - 1)
            value = form_value(spec, mpmath.mpc(0, s), precision, registry)
            samples.append((s, abs(value) * mpmath.exp(2 * mpmath.pi * s)))
    return DecayProfile(spec, tuple(samples), max(r for _, r in samples))
