#!/usr/bin/env python3
"""
Quadrature building blocks for integrals of modular forms along the
imaginary axis.

Two regimes meet at the split point s*: for s >= s* a form is its
q-expansion, and every integral against x^k is a closed-form sum of
incomplete gamma functions; for 0 < s < s* forms are evaluated pointwise
and integrated on geometrically graded Chebyshev-Lobatto panels, whose
spectral integration matrix gives antiderivatives at every node.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath

from ..errors import PrecisionError, SeriesDomainError, UnsupportedLimitError
from ..series import to_mpf

logger = logging.getLogger(__name__)

RULES = {'gauss-legendre': 'gauss-legendre', 'tanh-sinh': 'tanh-sinh'}
METHODS = ('direct-sum', 'mellin-split', 'nested-quadrature', 'closed-form', 'extrapolation')


@dataclass(frozen=True)
class QuadratureSpec:
    rule: str = 'gauss-legendre'
    abs_tol: float = 1e-30
    split_point: float = 0.3
    tail_order: int = 200
    degree: int = 24
    panels: int = 14
    ratio: float = 0.5

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"Unknown quadrature rule '{self.rule}' (expected one of {sorted(RULES)})")
        if not 0 < self.split_point:
            raise ValueError(f"split_point must be positive, got {self.split_point}")
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")

    @classmethod
    def from_config(cls, config):
        q = dict((config or {}).get('quadrature', {}))
        return cls(**{k: v for k, v in q.items() if k in cls.__dataclass_fields__})

    def check_precision(self, precision):
        """abs_tol may not ask for more than the working precision can deliver."""
        floor = mpmath.ldexp(1, -(precision - 16))
        if self.abs_tol < floor:
            raise PrecisionError(f"abs_tol {self.abs_tol} is below 2^-({precision}-16) for {precision}-bit precision")

    def refined(self):
        """Same grid with a higher Chebyshev degree, for error estimates."""
        return QuadratureSpec(self.rule, self.abs_tol, self.split_point, self.tail_order,
                              self.degree + self.degree // 2, self.panels + 2, self.ratio)

    def to_json(self):
        return {'rule': self.rule, 'abs_tol': self.abs_tol, 'split_point': self.split_point,
                'tail_order': self.tail_order, 'degree': self.degree, 'panels': self.panels,
                'ratio': self.ratio}


@dataclass(frozen=True)
class LValueResult:
    value: object
    error_bound: float
    method: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown method '{self.method}' (expected one of {METHODS})")

    @property
    def real(self):
        v = self.value
        return v.real if isinstance(v, mpmath.mpc) else v

    def to_json(self, digits=30):
        v = self.value
        if isinstance(v, mpmath.mpc):
            value = {'re': mpmath.nstr(v.real, digits), 'im': mpmath.nstr(v.imag, digits)}
        else:
            value = mpmath.nstr(mpmath.mpf(v), digits)
        return {'value': value, 'error_bound': float(self.error_bound), 'method': self.method,
                'details': {k: str(x) for k, x in sorted(self.details.items())}}


def integrate(fn, a, b, spec=None, precision=256):
    """(value, error estimate) of int_a^b fn with the spec's mpmath rule."""
    spec = spec or QuadratureSpec()
    with mpmath.workprec(precision):
        value, err = mpmath.quad(fn, [a, b], method=RULES[spec.rule], error=True)
    return value, err


@lru_cache(maxsize=32)
def _cumulative_matrix(degree, precision):
    """Q with int_{-1}^{x_i} p = sum_j Q[i][j] p(x_j), x_i = -cos(pi i/degree)."""
    m = degree
    with mpmath.workprec(precision):
        theta = [mpmath.pi - mpmath.pi * i / m for i in range(m + 1)]
        rows = [[mpmath.mpf(0)] * (m + 1) for _ in range(m + 1)]
        for j in range(m + 1):
            # Chebyshev coefficients of the j-th Lagrange basis polynomial
            w = mpmath.mpf(1) if 0 < j < m else mpmath.mpf(1) / 2
            a = [2 * w * mpmath.cos(k * theta[j]) / m for k in range(m + 1)]
            a[0] /= 2
            a[m] /= 2
            a = a + [mpmath.mpf(0), mpmath.mpf(0)]
            b = [mpmath.mpf(0)] * (m + 2)
            b[1] = a[0] - a[2] / 2
            for k in range(2, m + 2):
                b[k] = (a[k - 1] - a[k + 1]) / (2 * k)
            left = mpmath.fsum(b[k] * (-1) ** k for k in range(1, m + 2))
            for i in range(m + 1):
                rows[i][j] = mpmath.fsum(b[k] * mpmath.cos(k * theta[i]) for k in range(1, m + 2)) - left
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class ChebyshevGrid:
    """Panels [x_p, x_(p+1)] with degree+1 Lobatto nodes each."""
    breakpoints: tuple
    degree: int
    precision: int

    @classmethod
    def geometric(cls, end, panels, ratio, degree, precision, start=0):
        """Breakpoints start, end r^panels, ..., end r, end: refined towards `start`."""
        with mpmath.workprec(precision):
            end = mpmath.mpf(end)
            start = mpmath.mpf(start)
            pts = [start + (end - start) * mpmath.mpf(ratio) ** p for p in range(panels, -1, -1)]
        return cls(tuple([start] + pts), degree, precision)

    def panel_nodes(self):
        out = []
        with mpmath.workprec(self.precision):
            for a, b in zip(self.breakpoints, self.breakpoints[1:]):
                mid, half = (a + b) / 2, (b - a) / 2
                out.append([mid - half * mpmath.cos(mpmath.pi * i / self.degree) for i in range(self.degree + 1)])
        return out

    def nodes(self):
        return [x for panel in self.panel_nodes() for x in panel]

    def sample(self, fn):
        return [[fn(x) for x in panel] for panel in self.panel_nodes()]

    def cumulative(self, values):
        """Per-panel lists of int_start^x f at every node."""
        Q = _cumulative_matrix(self.degree, self.precision)
        out = []
        offset = mpmath.mpf(0)
        with mpmath.workprec(self.precision):
            for (a, b), vals in zip(zip(self.breakpoints, self.breakpoints[1:]), values):
                half = (b - a) / 2
                panel = [offset + half * mpmath.fsum(q * v for q, v in zip(row, vals)) for row in Q]
                out.append(panel)
                offset = panel[-1]
        return out

    def integral(self, values):
        return self.cumulative(values)[-1][-1]


def exp_moment_tail(k, c, s):
    """int_s^oo x^k e^(-c x) dx = Gamma(k+1, c s) / c^(k+1)."""
    return mpmath.gammainc(k + 1, a=c * s) / c ** (k + 1)


def series_tail_moment(series, k, s, prec=None):
    """int_s^oo x^k g(ix) dx from the q-expansion of g (vanishing constant term)."""
    with mpmath.workprec(prec or mpmath.mp.prec):
        total = mpmath.mpf(0)
        two_pi = 2 * mpmath.pi
        for e, c in series.items():
            if c == 0:
                continue
            if e <= 0:
                raise SeriesDomainError(f"Tail moment needs a vanishing constant term; found q^{e} coefficient {c}")
            total += to_mpf(c) * exp_moment_tail(k, two_pi * to_mpf(e), s)
        return total


def series_on_axis(series, s, prec=None):
    """g(is) from the truncated q-expansion."""
    with mpmath.workprec(prec or mpmath.mp.prec):
        return series.evaluate_q(mpmath.exp(-2 * mpmath.pi * mpmath.mpf(s))).real


def tail_bound(series, s):
    """Geometric bound for the omitted part of the q-expansion at q = e^(-2 pi s).

    The growth rate of the coefficients is estimated from the last ten; a
    rate that does not converge at q gives an infinite bound.
    """
    with mpmath.workprec(64):
        q = mpmath.exp(-2 * mpmath.pi * mpmath.mpf(s))
        coeffs = [abs(to_mpf(c)) for c in series.coeffs]
        if len(coeffs) < 11 or not any(coeffs[-11:]):
            return mpmath.mpf(0)
        top = max(coeffs[-3:])
        base = max(coeffs[-13:-10]) or 1
        rho = max((top / base) ** (mpmath.mpf(1) / 10), 1)
        x = rho * q
        if x >= 1:
            return mpmath.inf
        return top * q ** to_mpf(series.prec_exp - 1) * x / (1 - x)


def check_vanishing_at_zero(grid, values, name):
    """Values on the first panel, where x = 0 is a node, must be negligible."""
    first = max(abs(v) for v in values[0][1:])
    later = max(abs(v) for panel in values[1:] for v in panel) if len(values) > 1 else 0
    if first > mpmath.ldexp(1, -(grid.precision // 2)) * max(1, later):
        raise UnsupportedLimitError(
            f"{name} does not decay at s = 0 (|value| {mpmath.nstr(first, 5)} on the first panel)")


def axis_integral(fn, series, k, spec, precision, name='integrand'):
    """int_0^oo x^k g(ix) dx: Chebyshev panels of fn below the split point, the q-series above.

    Returns (value, error bound); the bound is the change under spec.refined()
    plus the series truncation bound.
    """
    def once(s):
        split = mpmath.mpf(s.split_point)
        grid = ChebyshevGrid.geometric(split, s.panels, s.ratio, s.degree, precision)
        values = grid.sample(lambda x: x ** k * fn(x) if x != 0 else mpmath.mpf(0))
        check_vanishing_at_zero(grid, values, name)
        return grid.integral(values) + series_tail_moment(series, k, split, precision)

    with mpmath.workprec(precision):
        value = once(spec)
        refined = once(spec.refined())
        bound = abs(value - refined) + tail_bound(series, spec.split_point)
    logger.debug("axis integral of %s: %s +- %s", name, mpmath.nstr(refined, 20), mpmath.nstr(bound, 3))
    return refined, bound
