#!/usr/bin/env python3
"""
Single L-values: Dirichlet L-functions, Eisenstein combinations, the CM
form of level 15, and the Chowla-Selberg period of Q(sqrt(-15)).

For a combination g = sum_j c_j E(d_j z) of one divisor-sum Eisenstein
series, L(g, s) = (sum_j c_j d_j^-s) L(psi, s) L(chi, s - power). At an
integer s the three factors may have a pole or a zero; the value is the
product of their leading Laurent coefficients when the orders add up to
zero.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log

import mpmath
import numpy as np
import sympy

from ..errors import PoleError, RecipeError
from ..forms.characters import CHI_M15, DirichletChar
from ..forms.eisenstein import EISENSTEIN
from ..forms.evaluate import form_value
from ..forms.eta import EtaQuotient, fricke_image
from ..forms.registry import IDENTITIES, default_registry
from ..series import D_inv, to_mpf
from .quadrature import LValueResult, exp_moment_tail, tail_bound

logger = logging.getLogger(__name__)

# cusp forms handled by the Mellin split: level and weight
CUSP_FORMS = {'f15': (15, 3)}
FRICKE_SAMPLES = 20


def _eps(precision):
    return mpmath.ldexp(1, -(precision - 8))


def chowla_selberg(precision=256):
    """Omega_15 = (30 pi)^(-1/2) (prod_{j=1}^{14} Gamma(j/15)^chi_-15(j))^(1/4)."""
    if precision < 64:
        raise ValueError(f"chowla_selberg needs at least 64 bits, got {precision}")
    with mpmath.workprec(precision + 20):
        product = mpmath.mpf(1)
        for j in range(1, 15):
            e = CHI_M15(j)
            if e:
                product *= mpmath.gamma(mpmath.mpf(j) / 15) ** e
        value = mpmath.root(product, 4) / mpmath.sqrt(30 * mpmath.pi)
    return +value


def _char_list(char):
    return [int(v) for v in char.values]


def dirichlet_lvalue(char, s, precision=256):
    """L(chi, s) for integer s >= 2 by periodized Hurwitz zeta summation."""
    if s < 2:
        raise ValueError(f"dirichlet_lvalue supports s >= 2, got {s}")
    with mpmath.workprec(precision + 20):
        m = char.modulus
        if char.is_trivial:
            value = mpmath.zeta(s)
        else:
            value = mpmath.fsum(int(char(a)) * mpmath.zeta(s, mpmath.mpf(a) / m) for a in range(1, m) if char(a)) / \
                mpmath.mpf(m) ** s
    return LValueResult(+value, _eps(precision), 'closed-form', {'modulus': char.modulus, 's': s})


def dirichlet_lvalue_direct(char, s, terms=10 ** 6):
    """Float partial sum over n <= terms with the bound modulus * terms^-s on the rest."""
    n = np.arange(1, terms + 1, dtype=np.float64)
    table = np.array(char.values, dtype=np.float64)
    chi = table[np.arange(1, terms + 1) % char.modulus]
    value = float(np.sum(chi / n ** s))
    bound = char.modulus * float(terms) ** (-s) + 1e-15 * terms ** 0.5
    return LValueResult(mpmath.mpf(value), bound, 'direct-sum', {'terms': terms})


# -- Eisenstein combinations -------------------------------------------------

@dataclass(frozen=True)
class EisensteinTerm:
    coeff: Fraction
    name: str
    scale: int


def eisenstein_decomposition(spec, registry=None):
    """[EisensteinTerm] for a form that is a linear combination of Eisenstein series.

    A form with a registered decomposition identity uses its right-hand
    side. Returns None when no decomposition is known.
    """
    registry = registry or default_registry()
    if isinstance(spec, str):
        for lhs, rhs in IDENTITIES:
            if lhs == spec and _decompose(registry, rhs) is not None:
                return _decompose(registry, rhs)
    return _decompose(registry, spec)


def _decompose(registry, spec):
    recipe = registry.resolve(spec)
    kind = recipe.get('kind')
    if kind == 'eisenstein':
        return [EisensteinTerm(Fraction(1), recipe['name'], 1)]
    if kind != 'linear':
        return None
    out = []
    for term in recipe['terms']:
        inner = _decompose(registry, term['form'])
        if inner is None:
            return None
        c, scale = Fraction(term['coeff']), int(term.get('scale', 1))
        out.extend(EisensteinTerm(c * t.coeff, t.name, t.scale * scale) for t in inner)
    return out


def eisenstein_bracket(terms, s):
    """sum_j c_j d_j^-s as an exact Fraction (integer s)."""
    return sum((t.coeff * Fraction(t.scale) ** (-s) for t in terms), Fraction(0))


def _dirichlet_laurent(char, s0):
    """(order, leading coefficient) of L(chi, s) at the integer s0."""
    if char.is_trivial:
        if s0 == 1:
            return -1, mpmath.mpf(1)
        if s0 <= -2 and s0 % 2 == 0:
            return 1, mpmath.zeta(s0, 1, 1)
        return 0, mpmath.zeta(s0)
    odd = char.is_odd()
    if s0 <= 0 and ((odd and s0 % 2 == 1) or (not odd and s0 % 2 == 0)):
        return 1, mpmath.dirichlet(s0, _char_list(char), 1)
    return 0, mpmath.dirichlet(s0, _char_list(char))


def _bracket_laurent(terms, s0):
    value = eisenstein_bracket(terms, s0)
    if value != 0:
        return 0, to_mpf(value)
    derivative = -mpmath.fsum(to_mpf(t.coeff) * mpmath.log(t.scale) * mpmath.mpf(t.scale) ** (-s0) for t in terms)
    return 1, derivative


def eisenstein_lvalue(terms, p, precision=256):
    """L(g, p) for g = sum c_j E(d_j z); PoleError when the orders do not cancel."""
    groups = {}
    for t in terms:
        spec = EISENSTEIN[t.name]
        groups.setdefault((spec.chi, spec.psi, spec.power), []).append(t)
    total = mpmath.mpf(0)
    orders = []
    with mpmath.workprec(precision + 20):
        for (chi, psi, power), group in sorted(groups.items(), key=lambda kv: kv[1][0].name):
            parts = [_bracket_laurent(group, p), _dirichlet_laurent(psi, p), _dirichlet_laurent(chi, p - power)]
            order = sum(o for o, _ in parts)
            orders.append(order)
            if order < 0:
                raise PoleError(f"L(g, s) has an uncancelled pole at s = {p} ({group[0].name} terms)")
            if order == 0:
                value = mpmath.mpf(1)
                for _, lead in parts:
                    value *= lead
                total += value
    logger.debug("eisenstein L-value at %s: factor orders %s", p, orders)
    return +total


def lvalue_single(spec, p, precision=256, registry=None):
    """L(g, p) for an Eisenstein combination or a registered cusp form."""
    registry = registry or default_registry()
    terms = eisenstein_decomposition(spec, registry)
    if terms is not None:
        value = eisenstein_lvalue(terms, p, precision)
        return LValueResult(value, _eps(precision) * max(1, abs(value)), 'closed-form',
                            {'form': spec, 's': p, 'bracket': eisenstein_bracket(terms, p)})
    if isinstance(spec, str) and spec in CUSP_FORMS:
        return cusp_lvalue_mellin(spec, p, precision, registry)
    raise RecipeError(f"No L-value method for form {spec!r}")


# -- cusp forms ----------------------------------------------------------------

@dataclass(frozen=True)
class FrickeFit:
    """g(-1/(N z)) = constant * z^k * g(z), fitted at sample points."""
    constant: object
    spread: object
    predicted: object
    samples: int

    def to_json(self):
        return {'constant': mpmath.nstr(self.constant, 30), 'spread': mpmath.nstr(self.spread, 5),
                'predicted': mpmath.nstr(self.predicted, 30) if self.predicted is not None else None,
                'samples': self.samples}


def _fricke_prediction(spec, level, registry):
    """Constant from the eta-quotient transformation law when the terms of g are permuted by the involution."""
    recipe = registry.resolve(spec)
    if recipe.get('kind') != 'linear':
        return None
    before, after, scales, weights = [], [], set(), set()
    for term in recipe['terms']:
        inner = registry.resolve(term['form'])
        if inner.get('kind') != 'eta' or int(term.get('scale', 1)) != 1:
            return None
        coeff = Fraction(term['coeff']) * Fraction(inner.get('coeff', '1'))
        eq = EtaQuotient.from_dict(inner)
        image = fricke_image(eq, level)
        before.append((coeff, eq.factors))
        after.append((coeff, image.image.factors))
        scales.add(image.scale)
        weights.add(image.weight)
    if len(scales) != 1 or len(weights) != 1 or sorted(before) != sorted(after):
        return None
    scale, weight = scales.pop(), weights.pop()
    return mpmath.mpc(0, -1) ** to_mpf(weight) * mpmath.mpf(str(sympy.N(scale, mpmath.mp.dps + 5)))


def fit_fricke_constant(spec='f15', precision=256, samples=FRICKE_SAMPLES, registry=None):
    """Fit c in g(-1/(N z)) = c z^k g(z) at `samples` points; spread is the largest deviation."""
    registry = registry or default_registry()
    level, weight = CUSP_FORMS[spec]
    values = []
    with mpmath.workprec(precision + 20):
        for k in range(samples):
            z = mpmath.mpc(mpmath.mpf(k - samples // 2) / (3 * samples), mpmath.mpf(1) / 5 + mpmath.mpf(k) / (2 * samples))
            gz = form_value(spec, z, precision, registry)
            if abs(gz) < mpmath.ldexp(1, -(precision // 4)):
                continue
            w = -1 / (level * z)
            values.append(form_value(spec, w, precision, registry) / (z ** weight * gz))
        constant = mpmath.fsum(values) / len(values)
        spread = max(abs(v - constant) for v in values)
        predicted = _fricke_prediction(spec, level, registry)
    logger.debug("Fricke constant for %s: %s (spread %s)", spec, mpmath.nstr(constant, 20), mpmath.nstr(spread, 3))
    return FrickeFit(constant, spread, predicted, len(values))


def cusp_lvalue_mellin(spec, s, precision=256, registry=None, fricke=None):
    """L(g, s) = (2 pi)^s / Gamma(s) [T(s-1) + (-i c) N^-s T(k-1-s)] split at y0 = 1/sqrt(N).

    T(a) = int_{y0}^oo y^a g(iy) dy, summed in closed form from the q-expansion.
    """
    registry = registry or default_registry()
    level, weight = CUSP_FORMS[spec]
    fricke = fricke or fit_fricke_constant(spec, precision, registry=registry)
    with mpmath.workprec(precision + 20):
        y0 = 1 / mpmath.sqrt(level)
        order = int(ceil(precision * log(2) / (2 * float(mpmath.pi) * float(y0)))) + 10
        series = registry.expansion(spec, order)

        def T(a):
            return mpmath.fsum(to_mpf(c) * exp_moment_tail(a, 2 * mpmath.pi * to_mpf(e), y0)
                               for e, c in series.items() if c != 0)

        c = fricke.predicted if fricke.predicted is not None else fricke.constant
        near = T(s - 1)
        far = -1j * c * mpmath.mpf(level) ** (-s) * T(weight - 1 - s)
        prefactor = (2 * mpmath.pi) ** s / mpmath.gamma(s)
        value = prefactor * (near + far)
        # the fitted spread only matters when no exact constant is known
        spread = fricke.spread if fricke.predicted is None else abs(fricke.predicted - fricke.constant)
        bound = abs(value.imag) + prefactor * (spread * abs(far / c) + 2 * tail_bound(series, y0)) + _eps(precision)
    return LValueResult(+value.real, bound, 'mellin-split',
                        {'form': spec, 's': s, 'terms': order, 'fricke': mpmath.nstr(c, 20)})


def cusp_lvalue_direct(spec, s, terms=2000, registry=None, precision=128):
    """Partial Dirichlet series with the Deligne-type bound 2 N^(k/2-s+1)/(s-k/2-1) on the rest."""
    registry = registry or default_registry()
    _, weight = CUSP_FORMS[spec]
    if s <= weight / 2 + 1:
        raise ValueError(f"Direct summation needs s > k/2 + 1 = {weight / 2 + 1}, got {s}")
    series = registry.expansion(spec, terms)
    with mpmath.workprec(precision):
        value = mpmath.fsum(to_mpf(c) / mpmath.mpf(int(e)) ** s for e, c in series.items() if c != 0 and e > 0)
        exponent = mpmath.mpf(weight) / 2 - s + 1
        bound = 2 * mpmath.mpf(terms) ** exponent / (-exponent)
    return LValueResult(value, bound, 'direct-sum', {'form': spec, 's': s, 'terms': terms})


def rv_constant(lvalue, precision=256):
    """6 (sqrt(15) / (2 pi))^5 L(f15, 4)."""
    with mpmath.workprec(precision):
        return 6 * (mpmath.sqrt(15) / (2 * mpmath.pi)) ** 5 * lvalue


# -- Eichler integrals -----------------------------------------------------------

def eichler_limit(spec, s, order=400, precision=256, registry=None):
    """D^-1 g at q = e^(-2 pi s): c_0 log q + sum c_n q^n / n, with log q = -2 pi s."""
    registry = registry or default_registry()
    antiderivative = D_inv(registry.expansion(spec, order))
    with mpmath.workprec(precision + 20):
        value = antiderivative.evaluate_at(mpmath.mpc(0, s), precision + 20)
    return +value.real


def eichler_extrapolate(spec, s_values=(0.4, 0.35, 0.3, 0.25, 0.2), order=400, precision=256, registry=None):
    """Polynomial extrapolation of D^-1 g(is) to s = 0; the change from dropping one node bounds the error."""
    with mpmath.workprec(precision + 20):
        xs = [mpmath.mpf(x) for x in s_values]
        ys = [eichler_limit(spec, x, order, precision, registry) for x in s_values]
        full = _neville_at_zero(xs, ys)
        reduced = _neville_at_zero(xs[:-1], ys[:-1])
    return LValueResult(+full, abs(full - reduced) + _eps(precision), 'extrapolation',
                        {'form': spec, 'nodes': len(xs)})


def _neville_at_zero(xs, ys):
    p = list(ys)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (xs[i + level] * p[i] - xs[i] * p[i + 1]) / (xs[i + level] - xs[i])
    return p[0]


CHARACTERS = {'chi_-3': DirichletChar.kronecker(-3), 'chi_-15': CHI_M15, 'trivial': DirichletChar.trivial()}
