#!/usr/bin/env python3
"""
Differential operators as theta-polynomials.

A ThetaOp stores sum c_ij x^i theta^j with theta = x d/dx, in the normal
order where every power of x stands to the left of every power of theta.
Negative i are allowed for intermediate Laurent operators. Products use the
commutation rule theta x^a = x^a (theta + a).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import sympy

from ..series import D, QSeries


def _shift_poly(coeffs, a):
    """Coefficients (ascending in theta) of p(theta + a)."""
    out = [Fraction(0)] * len(coeffs)
    for j, c in enumerate(coeffs):
        if not c:
            continue
        for m in range(j + 1):
            out[m] += c * comb(j, m) * Fraction(a) ** (j - m)
    return out


@dataclass(frozen=True)
class ThetaOp:
    """sum c_ij x^i theta^j; `terms` is a sorted tuple of ((i, j), c)."""
    terms: tuple

    def __post_init__(self):
        merged = {}
        for (i, j), c in self.terms:
            if j < 0:
                raise ValueError(f"Negative theta power {j}")
            merged[(int(i), int(j))] = merged.get((int(i), int(j)), Fraction(0)) + Fraction(c)
        object.__setattr__(self, 'terms', tuple(sorted((k, c) for k, c in merged.items() if c)))

    # -- construction ----------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs):
        return cls(tuple(coeffs.items()))

    @classmethod
    def from_expr(cls, expr, x, theta):
        """Read a sympy polynomial in x and theta, taken as normal ordered."""
        poly = sympy.Poly(sympy.expand(expr), x, theta)
        terms = []
        for (i, j), c in poly.terms():
            c = sympy.Rational(c)
            terms.append(((i, j), Fraction(int(c.p), int(c.q))))
        return cls(tuple(terms))

    @classmethod
    def theta(cls):
        return cls((((0, 1), 1),))

    @classmethod
    def monomial(cls, i, j=0, c=1):
        return cls((((i, j), c),))

    # -- structure -------------------------------------------------------

    def as_dict(self):
        return dict(self.terms)

    @property
    def x_degree(self):
        return max((i for (i, _), _ in self.terms), default=0)

    @property
    def x_valuation(self):
        return min((i for (i, _), _ in self.terms), default=0)

    @property
    def theta_degree(self):
        return max((j for (_, j), _ in self.terms), default=0)

    def theta_poly(self, i):
        """Ascending coefficients of P_i(theta), the part multiplying x^i."""
        out = [Fraction(0)] * (self.theta_degree + 1)
        for (a, j), c in self.terms:
            if a == i:
                out[j] += c
        return out

    def to_expr(self, x, theta):
        return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * x ** i * theta ** j
                           for (i, j), c in self.terms])

    def to_json(self):
        return [[i, j, str(c)] for (i, j), c in self.terms]

    def __str__(self):
        x, th = sympy.symbols('x theta')
        return str(sympy.collect(sympy.expand(self.to_expr(x, th)), x))

    # -- algebra ---------------------------------------------------------

    def __add__(self, other):
        return ThetaOp(self.terms + other.terms)

    def __neg__(self):
        return ThetaOp(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ThetaOp(tuple((k, v * Fraction(c)) for k, v in self.terms))

    def __mul__(self, other):
        if not isinstance(other, ThetaOp):
            return self.scale(other)
        out = {}
        for (a, b), c1 in self.terms:
            for (c, d), c2 in other.terms:
                # x^a theta^b x^c theta^d = x^(a+c) (theta + c)^b theta^d
                shifted = _shift_poly([Fraction(0)] * b + [Fraction(1)], c)
                for m, s in enumerate(shifted):
                    if s:
                        key = (a + c, m + d)
                        out[key] = out.get(key, Fraction(0)) + c1 * c2 * s
        return ThetaOp(tuple(out.items()))

    __rmul__ = scale

    def __pow__(self, k):
        result = ThetaOp.monomial(0)
        for _ in range(k):
            result = result * self
        return result

    def shift_x(self, k):
        """x^k * self."""
        return ThetaOp(tuple(((i + k, j), c) for (i, j), c in self.terms))

    def rescale(self, c):
        """Substitute x -> c x (theta unchanged)."""
        c = Fraction(c)
        return ThetaOp(tuple(((i, j), v * c ** i) for (i, j), v in self.terms))

    def section(self, k):
        """sum_{j >= k} c_ij x^i theta^(j - k)."""
        return ThetaOp(tuple(((i, j - k), c) for (i, j), c in self.terms if j >= k))

    def reflect_theta(self):
        """Substitute theta -> -theta - 1 (x unchanged)."""
        out = []
        for (i, j), c in self.terms:
            shifted = _shift_poly([Fraction(0)] * j + [Fraction(1)], 1)
            for m, s in enumerate(shifted):
                if s:
                    out.append(((i, m), c * s * (-1) ** j))
        return ThetaOp(tuple(out))

    def invert_x(self):
        """Substitute x -> 1/x in normal order (x powers stay on the left)."""
        return ThetaOp(tuple(((-i, j), c) for (i, j), c in self.terms))

    # -- action ----------------------------------------------------------

    def apply(self, a):
        """Apply to a QSeries in x; the result is known to a's precision."""
        powers = [a]
        for _ in range(self.theta_degree):
            powers.append(D(powers[-1]))
        result = None
        for (i, j), c in self.terms:
            term = powers[j].shift(i) * c
            result = term if result is None else result + term
        if result is None:
            return QSeries.zero(a.order, a.lead_exp)
        return result.truncate_abs(min(result.prec_exp, a.prec_exp))

    def apply_expr(self, expr, x):
        """Apply to a sympy expression in x."""
        powers = [expr]
        for _ in range(self.theta_degree):
            powers.append(sympy.expand(x * sympy.diff(powers[-1], x)))
        return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * x ** i * powers[j]
                           for (i, j), c in self.terms])


def op_apply(op, a):
    return op.apply(a)


@dataclass(frozen=True)
class DualOp:
    """x^power * op: the rewritten form of L(1/x, -theta - 1)."""
    op: ThetaOp
    power: int

    def to_json(self):
        return {'power': self.power, 'op': self.op.to_json()}


def dual_op(op):
    """L(1/t, -theta-1) = t^(-M) * sum c_ij t^(M-i) (-theta-1)^j with M = max i."""
    m = op.x_degree
    return DualOp(op.reflect_theta().invert_x().shift_x(m), -m)


def reflected(op):
    """L(1/t, -theta-1) as a Laurent ThetaOp (negative t powers on the left)."""
    return op.reflect_theta().invert_x()


def recentered(op, point):
    """The operator in x = lambda - point, times the x power clearing negative exponents.

    Uses lambda = point + x and theta_lambda = (1 + point/x) theta_x.
    """
    point = Fraction(point)
    if point == 0:
        return op
    lam = ThetaOp((((0, 0), point), ((1, 0), 1)))
    theta_l = ThetaOp((((0, 1), 1), ((-1, 1), point)))
    result = ThetaOp(())
    for (i, j), c in op.terms:
        result = result + (lam ** i * theta_l ** j).scale(c)
    return result.shift_x(-result.x_valuation)
