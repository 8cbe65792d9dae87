#!/usr/bin/env python3
"""
Truncated power series in q with a rational leading exponent.

A QSeries stands for

    q^lead_exp * (c_0 + c_1 q + ... + c_N q^N) + O(q^(lead_exp + N + 1))

Coefficients are exact Fractions by default. Calling to_float() switches a
series to mpmath floats; mixed arithmetic promotes the exact operand.
Binary operations never extend the known order.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Number

import mpmath

from ..errors import SeriesDomainError, TruncationError

logger = logging.getLogger(__name__)

EXPONENT_DENOMINATOR = 24
ARITH_KINDS = ('add', 'sub', 'mul', 'div', 'pow_int')


def _is_exact(c):
    return isinstance(c, (int, Fraction))


def to_mpf(c):
    """Convert an exact or float coefficient to an mpmath number."""
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpmathify(c)


def _as_coeff(c):
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        return mpmath.mpf(c)
    return c


def _check_exponent(e):
    e = Fraction(e)
    if (e * EXPONENT_DENOMINATOR).denominator != 1:
        raise SeriesDomainError(f"Exponent {e} is not a multiple of 1/{EXPONENT_DENOMINATOR}")
    return e


def _zero_like(coeffs):
    for c in coeffs:
        if not _is_exact(c):
            return mpmath.mpf(0)
    return Fraction(0)


def _common_denominator(coeffs):
    den = 1
    for c in coeffs:
        d = c.denominator
        if den % d:
            den = den * d // gcd(den, d)
    return den


def _scaled_ints(coeffs):
    den = _common_denominator(coeffs)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a, b, n):
    """First n coefficients of the product of coefficient lists a and b."""
    if n <= 0:
        return []
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [_zero_like(a + b)] * n
    if all(map(_is_exact, a)) and all(map(_is_exact, b)):
        ia, da = _scaled_ints([Fraction(c) for c in a])
        ib, db = _scaled_ints([Fraction(c) for c in b])
        den = da * db
        out = []
        la, lb = len(ia), len(ib)
        for k in range(n):
            lo = max(0, k - lb + 1)
            hi = min(k, la - 1)
            s = 0
            for i in range(lo, hi + 1):
                s += ia[i] * ib[k - i]
            out.append(Fraction(s, den))
        return out
    fa = [to_mpf(c) for c in a]
    fb = [to_mpf(c) for c in b]
    out = []
    la, lb = len(fa), len(fb)
    for k in range(n):
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        if hi < lo:
            out.append(mpmath.mpf(0))
        else:
            out.append(mpmath.fdot([(fa[i], fb[k - i]) for i in range(lo, hi + 1)]))
    return out


def _inverse(b, n):
    """Coefficients of 1/b to n terms; b[0] must be nonzero."""
    b0 = b[0]
    exact = all(map(_is_exact, b))
    inv0 = Fraction(1) / b0 if exact else 1 / to_mpf(b0)
    out = [inv0]
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(b) - 1) + 1):
            s += b[j] * out[k - j]
        out.append(-s * inv0)
    return out


def _power(b, k, n):
    """Coefficients of b^k to n terms by the J.C.P. Miller recurrence; b[0] nonzero."""
    b0 = b[0]
    if _is_exact(b0):
        first = Fraction(b0) ** k
    else:
        first = to_mpf(b0) ** k
    out = [first]
    for m in range(1, n):
        s = 0
        for j in range(1, min(m, len(b) - 1) + 1):
            s += (k * j - m + j) * b[j] * out[m - j]
        out.append(s / (m * b0))
    return out


@dataclass(frozen=True)
class QSeries:
    lead_exp: Fraction
    coeffs: tuple
    order: int

    def __post_init__(self):
        object.__setattr__(self, 'lead_exp', _check_exponent(self.lead_exp))
        if self.order < -1:
            raise ValueError(f"order must be >= -1, got {self.order}")
        coeffs = tuple(_as_coeff(c) for c in self.coeffs)
        n = self.order + 1
        if len(coeffs) > n:
            coeffs = coeffs[:n]
        elif len(coeffs) < n:
            coeffs = coeffs + (_zero_like(coeffs),) * (n - len(coeffs))
        object.__setattr__(self, 'coeffs', coeffs)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, lead_exp=0, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        return cls(Fraction(lead_exp), tuple(coeffs), order)

    @classmethod
    def constant(cls, c, order):
        return cls(Fraction(0), (c,), order)

    @classmethod
    def zero(cls, order, lead_exp=0):
        return cls(Fraction(lead_exp), (), order)

    @classmethod
    def monomial(cls, exponent, order, coeff=1):
        """coeff * q^exponent known to relative order `order`."""
        return cls(Fraction(exponent), (coeff,), order)

    # -- properties ------------------------------------------------------

    @property
    def is_exact(self):
        return all(map(_is_exact, self.coeffs))

    @property
    def prec_exp(self):
        """Exponent of the O-term: the series is known modulo q^prec_exp."""
        return self.lead_exp + self.order + 1

    @property
    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return self.lead_exp + k
        return None

    def coeff(self, exponent):
        e = Fraction(exponent)
        if e >= self.prec_exp:
            raise TruncationError(f"Coefficient of q^{e} requested; series known modulo q^{self.prec_exp}")
        k = e - self.lead_exp
        if k < 0 or k.denominator != 1:
            return _zero_like(self.coeffs)
        return self.coeffs[int(k)]

    def exponents(self):
        return [self.lead_exp + k for k in range(self.order + 1)]

    def items(self):
        return list(zip(self.exponents(), self.coeffs))

    # -- shape changes ---------------------------------------------------

    def normalized(self):
        """Strip exact leading zeros into lead_exp."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return QSeries(self.lead_exp + k, self.coeffs[k:], self.order - k)

    def truncate(self, order):
        if order > self.order:
            raise TruncationError(f"Cannot extend order {self.order} to {order}")
        return QSeries(self.lead_exp, self.coeffs[:order + 1], order)

    def truncate_abs(self, prec_exp):
        """Truncate so that the result is known modulo q^prec_exp."""
        prec_exp = Fraction(prec_exp)
        if prec_exp > self.prec_exp:
            raise TruncationError(f"Cannot extend precision q^{self.prec_exp} to q^{prec_exp}")
        order = int(prec_exp - self.lead_exp) - 1
        return QSeries(self.lead_exp, self.coeffs[:max(order + 1, 0)], max(order, -1))

    def with_lead(self, lead_exp):
        """Same series with coefficients indexed from a lower lead_exp."""
        lead_exp = Fraction(lead_exp)
        shift = self.lead_exp - lead_exp
        if shift < 0 or shift.denominator != 1:
            raise SeriesDomainError(f"Cannot re-index lead q^{self.lead_exp} at q^{lead_exp}")
        pad = (_zero_like(self.coeffs),) * int(shift)
        return QSeries(lead_exp, pad + self.coeffs, self.order + int(shift))

    def shift(self, k):
        """Multiply by q^k."""
        return QSeries(self.lead_exp + Fraction(k), self.coeffs, self.order)

    def scale(self, c):
        c = _as_coeff(c)
        s = self
        if not _is_exact(c):
            s = self if not self.is_exact else self.to_float()
        elif not self.is_exact:
            c = to_mpf(c)
        return QSeries(s.lead_exp, tuple(c * x for x in s.coeffs), s.order)

    def rescale(self, k):
        """Substitute q -> q^k (z -> k z) for a positive integer k."""
        if k < 1:
            raise SeriesDomainError(f"rescale factor must be a positive integer, got {k}")
        zero = _zero_like(self.coeffs)
        n = (self.order + 1) * k
        out = [zero] * n
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return QSeries(self.lead_exp * k, tuple(out), n - 1)

    def map_coeffs(self, fn):
        return QSeries(self.lead_exp, tuple(fn(c) for c in self.coeffs), self.order)

    def to_float(self, prec=None):
        """Convert coefficients to mpmath floats at `prec` bits."""
        if prec is None:
            return self.map_coeffs(to_mpf)
        with mpmath.workprec(prec):
            return self.map_coeffs(lambda c: +to_mpf(c))

    # -- comparison ------------------------------------------------------

    def first_mismatch(self, other, upto=None):
        """Smallest exponent where self and other differ, or None."""
        limit = min(self.prec_exp, other.prec_exp)
        if upto is not None:
            upto = Fraction(upto)
            if upto > limit:
                raise TruncationError(f"Comparison up to q^{upto} exceeds known precision q^{limit}")
            limit = upto
        start = min(self.lead_exp, other.lead_exp)
        if (self.lead_exp - other.lead_exp).denominator != 1:
            return start
        e = start
        while e < limit:
            if self.coeff(e) != other.coeff(e):
                return e
            e += 1
        return None

    def agrees_with(self, other, upto=None):
        return self.first_mismatch(other, upto) is None

    # -- evaluation ------------------------------------------------------

    def evaluate_at(self, z, prec=None):
        """Sum the truncated series at q = exp(2 pi i z)."""
        with mpmath.workprec(prec or mpmath.mp.prec):
            z = mpmath.mpmathify(z)
            two_pi_i = 2j * mpmath.pi
            q = mpmath.exp(two_pi_i * z)
            value = mpmath.polyval([to_mpf(c) for c in reversed(self.coeffs)], q) if self.coeffs else 0
            return mpmath.exp(two_pi_i * z * to_mpf(self.lead_exp)) * value

    def evaluate_q(self, q, prec=None):
        """Sum the truncated series at a given q (integer lead_exp only)."""
        if self.lead_exp.denominator != 1:
            raise SeriesDomainError("evaluate_q needs an integer lead exponent; use evaluate_at")
        with mpmath.workprec(prec or mpmath.mp.prec):
            q = mpmath.mpmathify(q)
            value = mpmath.polyval([to_mpf(c) for c in reversed(self.coeffs)], q) if self.coeffs else 0
            return q ** int(self.lead_exp) * value

    # -- serialization ---------------------------------------------------

    def to_dict(self):
        data = {
            'lead_exp': str(self.lead_exp),
            'coeffs': [str(c) if _is_exact(c) else mpmath.nstr(c, mpmath.mp.dps + 3) for c in self.coeffs],
            'order': self.order,
        }
        if not self.is_exact:
            data['backend'] = 'float'
        return data

    @classmethod
    def from_dict(cls, data):
        if data.get('backend') == 'float':
            coeffs = [mpmath.mpf(c) for c in data['coeffs']]
        else:
            coeffs = [Fraction(c) for c in data['coeffs']]
        return cls(Fraction(data['lead_exp']), tuple(coeffs), int(data['order']))

    # -- operators -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QSeries):
            return arith(self, other, 'add')
        if isinstance(other, Number):
            return self._add_scalar(other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return arith(self, other, 'sub')
        if isinstance(other, Number):
            return self._add_scalar(-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return (-self)._add_scalar(other)
        return NotImplemented

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return arith(self, other, 'mul')
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return arith(self, other, 'div')
        if isinstance(other, Number):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            inv = Fraction(1, other) if isinstance(other, int) else 1 / _as_coeff(other)
            return self.scale(inv)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Number):
            b = self.normalized()
            return arith(QSeries.constant(other, max(b.order, 0)), self, 'div')
        return NotImplemented

    def __pow__(self, k):
        return arith(self, k, 'pow_int')

    def _add_scalar(self, c):
        if c == 0:
            return self
        if self.lead_exp.denominator != 1:
            raise SeriesDomainError(f"Cannot add a constant to a series with lead q^{self.lead_exp}")
        if self.prec_exp <= 0:
            raise TruncationError(f"Constant term lies beyond known precision q^{self.prec_exp}")
        c = _as_coeff(c)
        s = self if self.lead_exp <= 0 else self.with_lead(0)
        if not _is_exact(c) and s.is_exact:
            s = s.to_float()
        elif _is_exact(c) and not s.is_exact:
            c = to_mpf(c)
        coeffs = list(s.coeffs)
        idx = int(-s.lead_exp)
        coeffs[idx] = coeffs[idx] + c
        return QSeries(s.lead_exp, tuple(coeffs), s.order)

    def __str__(self):
        return format_series(self)


def _coerce(a, b):
    if a.is_exact == b.is_exact:
        return a, b
    return a.to_float(), b.to_float()


def _add(a, b, sign):
    a, b = _coerce(a, b)
    if (a.lead_exp - b.lead_exp).denominator != 1:
        raise SeriesDomainError(f"Cannot add series with leads q^{a.lead_exp} and q^{b.lead_exp}")
    lead = min(a.lead_exp, b.lead_exp)
    prec = min(a.prec_exp, b.prec_exp)
    n = max(int(prec - lead), 0)
    out = [_zero_like(a.coeffs + b.coeffs)] * n
    for s, sgn in ((a, 1), (b, sign)):
        off = int(s.lead_exp - lead)
        for k, c in enumerate(s.coeffs):
            if off + k < n:
                out[off + k] = out[off + k] + (c if sgn > 0 else -c)
    return QSeries(lead, tuple(out), n - 1)


def arith(a, b, kind):
    """Truncated arithmetic on series: add, sub, mul, div or pow_int (b an int)."""
    if kind == 'add':
        return _add(a, b, 1)
    if kind == 'sub':
        return _add(a, b, -1)
    if kind == 'mul':
        a, b = _coerce(a.normalized(), b.normalized())
        n = min(a.order, b.order) + 1
        return QSeries(a.lead_exp + b.lead_exp, tuple(_convolve(a.coeffs, b.coeffs, n)), n - 1)
    if kind == 'div':
        a, b = _coerce(a.normalized(), b.normalized())
        if b.order < 0:
            raise SeriesDomainError("Division by a series that vanishes to its truncation order")
        n = min(a.order, b.order) + 1
        inv = _inverse(b.coeffs, n)
        return QSeries(a.lead_exp - b.lead_exp, tuple(_convolve(a.coeffs, inv, n)), n - 1)
    if kind == 'pow_int':
        k = b
        if not isinstance(k, int):
            raise TypeError(f"pow_int needs an integer exponent, got {k!r}")
        a = a.normalized()
        if k == 0:
            return QSeries.constant(1 if a.is_exact else mpmath.mpf(1), max(a.order, 0))
        if a.order < 0:
            if k < 0:
                raise SeriesDomainError("Negative power of a series that vanishes to its truncation order")
            return QSeries.zero(-1, a.prec_exp * k)
        n = a.order + 1
        return QSeries(a.lead_exp * k, tuple(_power(a.coeffs, k, n)), n - 1)
    raise ValueError(f"Unknown arithmetic kind '{kind}' (expected one of {ARITH_KINDS})")


def substitute(outer, inner):
    """Compose a series in t with t = inner(q); inner must vanish at q = 0."""
    inner = inner.normalized()
    if inner.lead_exp.denominator != 1 or outer.lead_exp.denominator != 1:
        raise SeriesDomainError("substitute needs integer exponents")
    if inner.order >= 0 and inner.lead_exp < 1:
        raise SeriesDomainError(f"Inner series has a constant term (lead q^{inner.lead_exp})")
    if outer.lead_exp < 0:
        raise SeriesDomainError("Outer series has negative powers of t")
    outer, inner = _coerce(outer, inner)
    m = int(inner.lead_exp)
    lo = int(outer.lead_exp)
    prec = min(int(inner.prec_exp) + m * max(lo - 1, 0), m * int(outer.prec_exp))
    if outer.order < 0 or prec <= 0:
        return QSeries.zero(-1, max(prec, 0))
    zero = _zero_like(inner.coeffs)
    inner_abs = [zero] * m + list(inner.coeffs)
    inner_abs = (inner_abs + [zero] * prec)[:prec]
    steps = min(outer.order, (prec - 1) // m + 1)
    acc = [outer.coeffs[steps]]
    for k in range(steps - 1, -1, -1):
        acc = _convolve(acc, inner_abs, prec)
        acc[0] = acc[0] + outer.coeffs[k]
    result = QSeries(Fraction(0), tuple(acc), prec - 1)
    if lo:
        result = result * inner ** lo
        result = result.truncate_abs(min(result.prec_exp, prec)).with_lead(0)
    logger.debug("substitute: outer order %d, inner order %d -> known modulo q^%d", outer.order, inner.order, prec)
    return result


def alternate_signs(a):
    """q -> -q, i.e. z -> z + 1/2 on integer-exponent expansions."""
    if a.lead_exp.denominator != 1:
        raise SeriesDomainError(f"alternate_signs needs an integer lead exponent, got {a.lead_exp}")
    base = int(a.lead_exp)
    return QSeries(a.lead_exp, tuple(c if (base + k) % 2 == 0 else -c for k, c in enumerate(a.coeffs)), a.order)


@dataclass(frozen=True)
class LogSeries:
    """log_coeff * log(q) + series; the image of D_inv on series with a constant term."""
    log_coeff: object
    series: QSeries

    def evaluate_at(self, z, prec=None):
        with mpmath.workprec(prec or mpmath.mp.prec):
            z = mpmath.mpmathify(z)
            log_q = 2j * mpmath.pi * z
            return to_mpf(self.log_coeff) * log_q + self.series.evaluate_at(z)

    def to_dict(self):
        return {'log_coeff': str(self.log_coeff), 'series': self.series.to_dict()}

    @classmethod
    def from_dict(cls, data):
        series = QSeries.from_dict(data['series'])
        log_coeff = Fraction(data['log_coeff']) if series.is_exact else mpmath.mpf(data['log_coeff'])
        return cls(log_coeff, series)


def D(a):
    """q d/dq on a QSeries or LogSeries."""
    if isinstance(a, LogSeries):
        return D(a.series)._add_scalar(a.log_coeff) if a.log_coeff != 0 else D(a.series)
    if a.is_exact:
        return QSeries(a.lead_exp, tuple(c * (a.lead_exp + k) for k, c in enumerate(a.coeffs)), a.order)
    return QSeries(a.lead_exp, tuple(c * to_mpf(a.lead_exp + k) for k, c in enumerate(a.coeffs)), a.order)


def D_inv(a):
    """Antiderivative for D: a_0 -> a_0 log q, a_e q^e -> (a_e / e) q^e."""
    if isinstance(a, LogSeries):
        if a.log_coeff != 0:
            raise SeriesDomainError("D_inv of a series with a log q term is not defined")
        a = a.series
    log_coeff = _zero_like(a.coeffs)
    out = []
    for k, c in enumerate(a.coeffs):
        e = a.lead_exp + k
        if e == 0:
            log_coeff = c
            out.append(_zero_like(a.coeffs))
        else:
            out.append(c / (e if a.is_exact else to_mpf(e)))
    return LogSeries(log_coeff, QSeries(a.lead_exp, tuple(out), a.order))


def D_inv_power(a, k):
    """k-fold D_inv of a series with vanishing constant term."""
    result = a
    for _ in range(k):
        step = D_inv(result)
        if step.log_coeff != 0:
            raise SeriesDomainError("Iterated D_inv needs a vanishing constant term")
        result = step.series
    return result


def _format_coeff(c):
    if _is_exact(c):
        return str(c)
    return mpmath.nstr(c, 15)


def format_series(s, var='q', upto=None):
    """Render as e.g. '13q + 316q^2 + 2328q^3' (no O-term)."""
    terms = []
    for e, c in s.items():
        if upto is not None and e > upto:
            break
        if c == 0:
            continue
        neg = c < 0 if not isinstance(c, mpmath.mpc) else False
        mag = -c if neg else c
        if e == 0:
            body = _format_coeff(mag)
        else:
            power = var if e == 1 else (f"{var}^{e}" if e.denominator == 1 else f"{var}^({e})")
            body = power if mag == 1 else f"{_format_coeff(mag)}{power}"
        terms.append(('-' if neg else '+', body))
    if not terms:
        return '0'
    out = ('-' if terms[0][0] == '-' else '') + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
