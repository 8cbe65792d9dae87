#!/usr/bin/env python3
"""
Power-series solvers for theta-operators.

Write an operator as sum_i x^i P_i(theta). At a point of maximal unipotent
monodromy P_0(theta) = c theta^N, and the Frobenius basis comes from
y(x, e) = sum_n A_n(e) x^(n+e) with

    P_0(n + e) A_n(e) = -sum_{i>=1} P_i(n - i + e) A_(n-i)(e),   A_0 = 1,

differentiated k times in e at e = 0. A_n(e) is carried as a truncated
polynomial in e of degree N - 1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath
import sympy

from ..errors import IndicialError, SeriesDomainError
from ..series import D, QSeries
from .ratfunc import RatFunc
from .theta import recentered

logger = logging.getLogger(__name__)


def _eval_poly(coeffs, n):
    return sum(c * Fraction(n) ** j for j, c in enumerate(coeffs))


def _taylor_in_e(coeffs, n, r):
    """P(n + e) as [P(n), P'(n), P''(n)/2, ...] up to e^(r-1)."""
    out = []
    for d in range(r):
        total = Fraction(0)
        for j, c in enumerate(coeffs):
            if j >= d and c:
                total += c * comb(j, d) * Fraction(n) ** (j - d)
        out.append(total)
    return out


def _emul(a, b):
    r = len(a)
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(r)]


def _einv(a):
    r = len(a)
    out = [Fraction(1) / a[0]]
    for k in range(1, r):
        out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
    return out


def _indicial(op):
    p0 = op.theta_poly(0)
    while p0 and p0[-1] == 0:
        p0.pop()
    return p0


def is_mum(op):
    """P_0(theta) = c theta^N with N the theta degree."""
    if op.x_valuation < 0:
        return False
    p0 = _indicial(op)
    n = op.theta_degree
    return len(p0) == n + 1 and all(c == 0 for c in p0[:n]) and p0[n] != 0


@dataclass(frozen=True)
class FrobeniusSolution:
    """sum_k strata[k](x) (log x)^k with x = lambda - point."""
    strata: tuple
    point: Fraction

    @property
    def log_degree(self):
        return len(self.strata) - 1

    def apply(self, op):
        """op applied termwise; returns the strata of the result."""
        # theta (s log^k) = (theta s) log^k + k s log^(k-1)
        out = [QSeries.zero(s.order, s.lead_exp) for s in self.strata]
        for (i, j), c in op.terms:
            current = list(self.strata)
            for _ in range(j):
                current = [D(current[k]) + (current[k + 1] * (k + 1) if k + 1 < len(current) else 0)
                           for k in range(len(current))]
            out = [out[k] + current[k].shift(i) * c for k in range(len(out))]
        return [s.truncate_abs(min(s.prec_exp, self.strata[0].prec_exp)) for s in out]

    def evaluate(self, x, prec=None):
        with mpmath.workprec(prec or mpmath.mp.prec):
            x = mpmath.mpmathify(x)
            log_x = mpmath.log(x)
            return mpmath.fsum(s.evaluate_q(x) * log_x ** k for k, s in enumerate(self.strata))

    def to_json(self):
        return {'point': str(self.point), 'strata': [s.to_dict() for s in self.strata]}


def frobenius_basis(op, point=0, order=50, mode='mum'):
    """Frobenius basis phi_0..phi_(N-1) at `point`.

    mode 'mum' needs P_0 = c theta^N and returns phi_k = (log x)^k (1 + O(x)) + lower strata.
    mode 'ordinary' needs indicial roots 0..N-1 and returns the Taylor basis
    x^e + O(x^N), e = 0..N-1.
    """
    point = Fraction(point)
    local = recentered(op, point)
    if mode == 'ordinary':
        return _ordinary_basis(local, point, order)
    if mode != 'mum':
        raise ValueError(f"Unknown mode '{mode}' (expected 'mum' or 'ordinary')")
    if not is_mum(local):
        raise IndicialError(f"Point {point} is not a point of maximal unipotent monodromy "
                            f"(indicial polynomial {_indicial(local)})")
    n_deg = local.theta_degree
    polys = {i: local.theta_poly(i) for i in range(local.x_degree + 1)}
    A = [[Fraction(1)] + [Fraction(0)] * (n_deg - 1)]
    for n in range(1, order + 1):
        acc = [Fraction(0)] * n_deg
        for i in range(1, min(n, local.x_degree) + 1):
            term = _emul(_taylor_in_e(polys[i], n - i, n_deg), A[n - i])
            acc = [a - b for a, b in zip(acc, term)]
        A.append(_emul(_einv(_taylor_in_e(polys[0], n, n_deg)), acc))
    basis = []
    for k in range(n_deg):
        strata = []
        for m in range(k + 1):
            d = k - m
            coeffs = [a[d] * factorial(d) * comb(k, m) for a in A]
            strata.append(QSeries.from_coeffs(coeffs))
        basis.append(FrobeniusSolution(tuple(strata), point))
    logger.debug("Frobenius basis at %s: %d solutions to order %d", point, n_deg, order)
    return basis


def _ordinary_basis(local, point, order):
    n_deg = local.theta_degree
    p0 = local.theta_poly(0)
    if local.x_valuation < 0 or any(_eval_poly(p0, e) != 0 for e in range(n_deg)):
        raise IndicialError(f"Point {point} is not an ordinary point (indicial polynomial {_indicial(local)})")
    polys = {i: local.theta_poly(i) for i in range(local.x_degree + 1)}
    basis = []
    for e in range(n_deg):
        y = [Fraction(int(n == e)) for n in range(min(n_deg, order + 1))]
        for n in range(len(y), order + 1):
            rhs = -sum(_eval_poly(polys[i], n - i) * y[n - i] for i in range(1, min(n, local.x_degree) + 1))
            y.append(rhs / _eval_poly(p0, n))
        for n in range(1, min(n_deg, order + 1)):
            rhs = -sum(_eval_poly(polys[i], n - i) * y[n - i] for i in range(1, min(n, local.x_degree) + 1))
            if rhs != 0:
                raise IndicialError(f"Point {point}: recurrence is inconsistent at x^{n}")
        basis.append(FrobeniusSolution((QSeries.from_coeffs(y),), point))
    return basis


def solve_nonhomogeneous(op, rhs, seed, order=None):
    """Power series y with op y = rhs and y_0 = seed (op of MUM type at 0).

    rhs is an exact QSeries in t vanishing at t = 0; the result is known to
    the precision of rhs (or to `order` when given).
    """
    if not is_mum(op):
        raise IndicialError("solve_nonhomogeneous needs P_0(theta) = c theta^N")
    if order is None:
        order = int(rhs.prec_exp) - 1
    if rhs.lead_exp < 0 or (rhs.lead_exp == 0 and rhs.coeff(0) != 0):
        raise SeriesDomainError("Right-hand side must vanish at t = 0")
    p0 = op.theta_poly(0)
    polys = {i: op.theta_poly(i) for i in range(op.x_degree + 1)}
    r = [rhs.coeff(n) for n in range(order + 1)]
    y = [Fraction(seed)]
    for n in range(1, order + 1):
        acc = r[n] - sum(_eval_poly(polys[i], n - i) * y[n - i] for i in range(1, min(n, op.x_degree) + 1))
        y.append(acc / _eval_poly(p0, n))
    return QSeries.from_coeffs(y)


@dataclass(frozen=True)
class SymbolicSeries:
    """sum monomial * series, with monomials in pi, Omega, sqrt(d) kept symbolic."""
    terms: tuple

    def component(self, monomial):
        for m, s in self.terms:
            if sympy.simplify(m - sympy.sympify(monomial)) == 0:
                return s
        return None

    def coefficient(self, n):
        return sympy.Add(*[m * sympy.Rational(str(s.coeff(n))) for m, s in self.terms])

    def numeric(self, substitutions=None, prec=256):
        """Float QSeries with every monomial evaluated."""
        substitutions = substitutions or {}
        total = None
        with mpmath.workprec(prec):
            for m, s in self.terms:
                value = mpmath.mpf(str(sympy.N(m.subs(substitutions), int(prec * 0.302) + 10)))
                part = s.to_float(prec) * value
                total = part if total is None else total + part
        return total

    def to_json(self):
        return [{'monomial': str(m), 'series': s.to_dict()} for m, s in self.terms]


def solve_symbolic(op, rhs, seed, order):
    """solve_nonhomogeneous by linearity over the symbolic constants of rhs and seed."""
    if not isinstance(rhs, RatFunc):
        rhs = RatFunc.of(rhs)
    pieces = rhs.split_constants()
    seeds = {}
    for term in sympy.Add.make_args(sympy.expand(sympy.sympify(seed))):
        rational, monomial = term.as_coeff_Mul()
        seeds[monomial] = seeds.get(monomial, 0) + rational
    terms = []
    for monomial in sorted(set(pieces) | set(seeds), key=sympy.default_sort_key):
        part = pieces.get(monomial)
        series = part.to_series(order) if part is not None else QSeries.zero(order)
        s0 = sympy.Rational(seeds.get(monomial, 0))
        y = solve_nonhomogeneous(op, series, Fraction(int(s0.p), int(s0.q)), order)
        terms.append((monomial, y))
    return SymbolicSeries(tuple(terms))
