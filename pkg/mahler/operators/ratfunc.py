#!/usr/bin/env python3
"""
Rational functions in one variable with sympy coefficients.

Coefficients may involve a parameter (lambda) or opaque constants such as
pi, Omega and sqrt(5); these are carried symbolically. The Laurent split at
t = 0 separates the principal part from the part regular at the origin.
"""

from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..series import QSeries

t = sympy.Symbol('t')
lam = sympy.Symbol('lambda')
Omega = sympy.Symbol('Omega', positive=True)


def _normalize(expr, var):
    expr = sympy.cancel(sympy.together(expr))
    num, den = sympy.fraction(expr)
    den_poly = sympy.Poly(den, var)
    lc = den_poly.LC()
    num = sympy.expand(num / lc)
    den = sympy.expand(den / lc)
    return num, den


@dataclass(frozen=True)
class RatFunc:
    """num / den in `var`; den monic in var and coprime to num."""
    num: sympy.Expr
    den: sympy.Expr
    var: sympy.Symbol = t

    @classmethod
    def of(cls, expr, var=t):
        num, den = _normalize(sympy.sympify(expr), var)
        return cls(num, den, var)

    @classmethod
    def zero(cls, var=t):
        return cls(sympy.Integer(0), sympy.Integer(1), var)

    @property
    def expr(self):
        return self.num / self.den

    def __add__(self, other):
        return RatFunc.of(self.expr + _expr(other), self.var)

    __radd__ = __add__

    def __sub__(self, other):
        return RatFunc.of(self.expr - _expr(other), self.var)

    def __rsub__(self, other):
        return RatFunc.of(_expr(other) - self.expr, self.var)

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.var)

    def __mul__(self, other):
        return RatFunc.of(self.expr * _expr(other), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RatFunc.of(self.expr / _expr(other), self.var)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.of(other, self.var)
        return sympy.simplify(self.expr - other.expr) == 0

    def __hash__(self):
        return hash((sympy.srepr(self.num), sympy.srepr(self.den)))

    def subs(self, *args):
        return RatFunc.of(self.expr.subs(*args), self.var)

    def theta(self):
        """var d/dvar."""
        return RatFunc.of(self.var * sympy.diff(self.expr, self.var), self.var)

    def limit(self, point):
        return sympy.limit(self.expr, self.var, point)

    # -- Laurent split at 0 ----------------------------------------------

    def pole_order(self):
        """Order of the pole at var = 0 (0 when regular)."""
        k = 0
        den = sympy.Poly(self.den, self.var)
        while den.eval(0) == 0:
            den = sympy.Poly(sympy.cancel(den.as_expr() / self.var), self.var)
            k += 1
        return k

    def laurent_split(self):
        """(minus, plus): principal part at 0 and the remainder regular at 0."""
        k = self.pole_order()
        if k == 0:
            return RatFunc.zero(self.var), self
        regular = RatFunc.of(self.expr * self.var ** k, self.var)
        head = sympy.series(regular.expr, self.var, 0, k).removeO()
        minus = RatFunc.of(sympy.expand(head) / self.var ** k, self.var)
        return minus, self - minus

    def minus_part(self):
        return self.laurent_split()[0]

    def plus_part(self):
        return self.laurent_split()[1]

    # -- constants -------------------------------------------------------

    def split_constants(self):
        """{monomial: RatFunc with rational coefficients} with sum monomial * part == self."""
        pieces = {}
        for term in sympy.Add.make_args(sympy.expand(self.expr)):
            const, dep = term.as_independent(self.var, as_Add=False)
            rational, monomial = const.as_coeff_Mul()
            pieces[monomial] = pieces.get(monomial, 0) + rational * dep
        return {m: RatFunc.of(v, self.var) for m, v in pieces.items() if v != 0}

    def is_univariate_rational(self):
        return not (self.num.free_symbols | self.den.free_symbols) - {self.var} and \
            all(c.is_Rational for c in sympy.Poly(self.num, self.var).coeffs() + sympy.Poly(self.den, self.var).coeffs())

    def to_series(self, order):
        """Exact power series at 0 (rational coefficients, no pole) known to var^order."""
        if not self.is_univariate_rational():
            raise ValueError("to_series needs rational coefficients; use split_constants first")
        a = QSeries.from_coeffs(_poly_coeffs(self.num, self.var), order=order)
        b = QSeries.from_coeffs(_poly_coeffs(self.den, self.var), order=order)
        series = a / b
        if series.lead_exp < 0:
            raise ValueError(f"{self} has a pole at {self.var} = 0")
        series = series.truncate_abs(order + 1)
        return series.with_lead(0) if series.lead_exp > 0 else series

    def to_json(self):
        return {'num': str(self.num), 'den': str(self.den), 'var': str(self.var)}

    def latex(self):
        return sympy.latex(sympy.factor(self.expr))

    def __str__(self):
        return str(sympy.factor(self.expr))


def _expr(value):
    return value.expr if isinstance(value, RatFunc) else sympy.sympify(value)


def _poly_coeffs(expr, var):
    coeffs = sympy.Poly(expr, var).all_coeffs()[::-1]
    return [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in coeffs]
