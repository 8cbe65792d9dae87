#!/usr/bin/env python3
"""
Named catalogue of modular objects and their construction recipes.

A recipe is a JSON-serializable dict with a 'kind':

    eta         coeff * prod eta(d z)^k                 {'factors': [[d, k], ...], 'coeff': 'p/q'}
    eisenstein  divisor-sum series                      {'name': 'E4'}
    linear      sum coeff * F(scale z)                  {'terms': [{'coeff', 'form', 'scale'}]}
    product     F * G * ...                             {'factors': [F, G]}
    pullback    num(t)/den(t) * Dt * f, optionally at z + 1/2
                                                        {'param': 'L3', 'num': [...], 'den': [...], 'shift_half': bool}

'form' entries may be registry names or nested recipes. Expansions are
exact and known modulo q^(order+1) (relative order for fractional leads).
"""

import hashlib
import json
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction

from ..config.validation import validate_recipe
from ..errors import RecipeError, TruncationError, UnknownFormError
from ..series import QSeries, alternate_signs, D, substitute
from .eisenstein import eisenstein_expansion
from .eta import EtaQuotient, eta_quotient_expansion

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 200


def eta(factors, coeff=1):
    return {'kind': 'eta', 'factors': [[d, k] for d, k in factors], 'coeff': str(Fraction(coeff))}


def eis(name):
    return {'kind': 'eisenstein', 'name': name}


def linear(*terms):
    """terms: (coeff, form, scale) triples."""
    return {'kind': 'linear', 'terms': [{'coeff': str(Fraction(c)), 'form': f, 'scale': s} for c, f, s in terms]}


def product(*factors):
    return {'kind': 'product', 'factors': list(factors)}


def pullback(param, num, den, shift_half=False):
    return {
        'kind': 'pullback', 'param': param,
        'num': [str(Fraction(c)) for c in num], 'den': [str(Fraction(c)) for c in den],
        'shift_half': shift_half,
    }


# t, f pairs and the algebraic relation (Dt / (t f^f_power))^power = poly(t)
PARAMETRIZATIONS = {
    'L2': {'t': 't2', 'f': 'f2', 'weight': 1, 'dt_relation': {'f_power': 2, 'power': 1, 'poly': [1, -10, 9]}},
    'L3': {'t': 't3', 'f': 'f3', 'weight': 2, 'dt_relation': {'f_power': 1, 'power': 2, 'poly': [1, -20, 64]}},
}


@dataclass(frozen=True)
class FormEntry:
    name: str
    recipe: dict
    weight: Fraction
    holomorphic: bool = True
    description: str = ''


def _entry(name, recipe, weight, description, holomorphic=True):
    return name, FormEntry(name, recipe, Fraction(weight), holomorphic, description)


DEFAULT_FORMS = dict([
    _entry('t2', eta([(6, 8), (1, 4), (3, -4), (2, -8)]), 0, 'Hauptmodul for the L2 parametrization'),
    _entry('f2', eta([(2, 6), (3, 1), (1, -3), (6, -2)]), 1, 'weight-1 form for the L2 parametrization'),
    _entry('t3', eta([(2, 6), (6, 6), (1, -6), (3, -6)], -1), 0, 'Hauptmodul for the L3 parametrization'),
    _entry('f3', eta([(1, 4), (3, 4), (2, -2), (6, -2)]), 2, 'weight-2 form for the L3 parametrization'),
    _entry('g1w3', pullback('L2', [1], [0, 1], shift_half=True), 3, '(Dt/t f)(z+1/2) for L2'),
    _entry('g2w3', pullback('L2', [1], [1, -1], shift_half=True), 3, '(Dt/(1-t) f)(z+1/2) for L2'),
    _entry('g1w4', pullback('L3', [1], [0, 1]), 4, 'Dt/t f for L3'),
    _entry('g2w4', pullback('L3', [1], [1, -1]), 4, 'Dt/(1-t) f for L3', holomorphic=False),
    _entry('g3w4', pullback('L3', [-13, 251, 212], [1, -3, 3, -1]), 4,
           '(212t^2+251t-13)/(1-t)^3 Dt f for L3', holomorphic=False),
    _entry('f15', linear((1, eta([(3, 3), (5, 3)]), 1), (1, eta([(1, 3), (15, 3)]), 1)), 3,
           'CM form of level 15'),
    _entry('E4', eis('E4'), 4, 'Eisenstein series of weight 4, level 1'),
    _entry('E3chi', eis('E3chi'), 3, 'Eisenstein series of weight 3, character chi_-3'),
    _entry('E3chi_tilde', eis('E3chi_tilde'), 3, 'companion Eisenstein series of weight 3'),
    _entry('E1', eis('E1'), 1, 'Eisenstein series of weight 1, character chi_-3'),
    _entry('G2', eis('G2'), 2, 'quasi-modular Eisenstein series of weight 2'),
    _entry('E4_eta', linear((Fraction(1, 240), eta([(1, 16), (2, -8)]), 1),
                            (Fraction(256, 240), eta([(2, 16), (1, -8)]), 1)), 4, 'E4 as eta quotients'),
    _entry('E3chi_eta', eta([(1, 9), (3, -3)], Fraction(-1, 9)), 3, 'E3chi as an eta quotient'),
    _entry('E3chi_tilde_eta', eta([(3, 9), (1, -3)]), 3, 'E3chi_tilde as an eta quotient'),
    _entry('E1_eta', linear((Fraction(1, 6), eta([(1, 3), (3, -1)]), 1),
                            (Fraction(3, 2), eta([(9, 3), (3, -1)]), 1)), 1, 'E1 as eta quotients'),
    _entry('g1w4_eis', linear((2, 'E4', 1), (-32, 'E4', 2), (-18, 'E4', 3), (288, 'E4', 6)), 4,
           'Eisenstein decomposition of g1w4'),
    _entry('g1w3_eis', linear((1, 'E3chi', 1), (-2, 'E3chi', 2), (-8, 'E3chi', 4)), 3,
           'Eisenstein decomposition of g1w3'),
    _entry('g2w3_eis', linear((-1, 'E3chi', 1), (-7, 'E3chi', 2), (8, 'E3chi', 4)), 3,
           'Eisenstein decomposition of g2w3'),
    _entry('g1hat', linear((1, 'E3chi_tilde', 1), (2, 'E3chi_tilde', 2), (-8, 'E3chi_tilde', 4)), 3,
           'Atkin-Lehner image of g1w3'),
    _entry('f1', linear((-1, 'E1', 1), (-7, 'E1', 2), (8, 'E1', 4)), 1, 'weight-1 Eisenstein combination'),
    _entry('f2sec7', linear((1, 'E1', 1), (Fraction(1, 2), 'E1', 2), (Fraction(-1, 2), 'E1', 4)), 1,
           'weight-1 Eisenstein combination'),
    _entry('f2sec7_eta', linear((Fraction(1, 2), eta([(4, 2), (12, 2), (2, -1), (6, -1)]), 1),
                                (Fraction(1, 6), eta([(2, 6), (3, 1), (1, -3), (6, -2)]), 1)), 1,
           'f2sec7 as eta quotients'),
    _entry('f2hat', linear((-1, 'E1', 1), (2, 'E1', 2), (8, 'E1', 4)), 1, 'Atkin-Lehner image of f2sec7'),
    _entry('f2hat_eta', linear((Fraction(1, 2), eta([(3, 2), (1, 2), (6, -1), (2, -1)]), 1),
                               (1, eta([(6, 6), (4, 1), (12, -3), (2, -2)]), 1)), 1, 'f2hat as eta quotients'),
    _entry('f1f2hat', product('f1', 'f2hat'), 2, 'product of f1 and f2hat'),
    _entry('f1f2hat_eis', linear((Fraction(-3, 2), 'G2', 1), (-5, 'G2', 2), (Fraction(19, 2), 'G2', 3),
                                 (24, 'G2', 4), (-35, 'G2', 6), (8, 'G2', 12)), 2,
           'G2 decomposition of f1 * f2hat'),
])

# (lhs, rhs) pairs certified to a finite order
IDENTITIES = [
    ('g1w4', 'g1w4_eis'),
    ('g1w3', 'g1w3_eis'),
    ('g2w3', 'g2w3_eis'),
    ('E4', 'E4_eta'),
    ('E3chi', 'E3chi_eta'),
    ('E3chi_tilde', 'E3chi_tilde_eta'),
    ('E1', 'E1_eta'),
    ('f2sec7', 'f2sec7_eta'),
    ('f2hat', 'f2hat_eta'),
    ('f1f2hat', 'f1f2hat_eis'),
]


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


@dataclass(frozen=True)
class IdentityResult:
    lhs: str
    rhs: str
    order: int
    equal: bool
    first_mismatch: object = None
    lhs_coeff: object = None
    rhs_coeff: object = None


@dataclass(frozen=True)
class G2Fit:
    """constant is None when the decomposition leaves it undetermined."""
    constant: object
    first_mismatch: object = None

    def consistent_with(self, constant):
        return self.first_mismatch is None and self.constant in (None, constant)


class FormRegistry:
    """Read-mostly catalogue of forms; expansions are memoized per (form, order)."""

    def __init__(self, forms=None, cache=None):
        self._forms = dict(DEFAULT_FORMS if forms is None else forms)
        self._cache = cache
        self._memo = {}
        self._lock = threading.RLock()

    # -- catalogue -------------------------------------------------------

    def names(self):
        return sorted(self._forms)

    def __contains__(self, name):
        return name in self._forms

    def entry(self, name):
        try:
            return self._forms[name]
        except KeyError:
            raise UnknownFormError(f"Unknown form '{name}'")

    def register(self, name, recipe, weight, description='', holomorphic=True):
        self._validate(recipe)
        with self._lock:
            self._forms[name] = FormEntry(name, recipe, Fraction(weight), holomorphic, description)

    def resolve(self, spec):
        """Recipe dict for a registry name or a literal recipe."""
        if isinstance(spec, str):
            return self.entry(spec).recipe
        if isinstance(spec, dict):
            return spec
        raise RecipeError(f"Form spec must be a name or a recipe dict, got {type(spec).__name__}")

    def expanded_recipe(self, spec):
        """Recipe with every referenced name replaced by its own recipe."""
        recipe = self.resolve(spec)
        kind = recipe.get('kind')
        if kind == 'linear':
            return {**recipe, 'terms': [{**t, 'form': self.expanded_recipe(t['form'])} for t in recipe['terms']]}
        if kind == 'product':
            return {**recipe, 'factors': [self.expanded_recipe(f) for f in recipe['factors']]}
        if kind == 'pullback':
            param = PARAMETRIZATIONS[recipe['param']]
            return {**recipe, 't': self.expanded_recipe(param['t']), 'f': self.expanded_recipe(param['f'])}
        return recipe

    def recipe_hash(self, spec):
        return hashlib.sha256(canonical_json(self.expanded_recipe(spec)).encode()).hexdigest()

    def _validate(self, recipe):
        is_valid, errors = validate_recipe(recipe)
        if not is_valid:
            raise RecipeError(f"Invalid recipe: {'; '.join(errors)}")

    # -- expansion -------------------------------------------------------

    def expansion(self, spec, order=DEFAULT_ORDER):
        recipe = self.resolve(spec)
        key = (canonical_json(recipe), order)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        series = self._load_cached(spec, order)
        if series is None:
            series = self._expand(recipe, order)
            self._store_cached(spec, order, series)
        with self._lock:
            self._memo[key] = series
        return series

    def _cache_key(self, spec, order):
        return f"expansion-{self.recipe_hash(spec)}-{order}"

    def _load_cached(self, spec, order):
        if self._cache is None:
            return None
        data = self._cache.get(self._cache_key(spec, order))
        if data is None:
            return None
        logger.debug("cache hit for expansion of %s to order %d", spec if isinstance(spec, str) else 'recipe', order)
        return QSeries.from_dict(data)

    def _store_cached(self, spec, order, series):
        if self._cache is not None:
            self._cache.put(self._cache_key(spec, order), series.to_dict())

    def _expand(self, recipe, order):
        self._validate(recipe)
        kind = recipe['kind']
        if kind == 'eta':
            eq = EtaQuotient.from_dict(recipe)
            lead = eq.lead_exp
            rel = order - int(lead) if lead.denominator == 1 else order
            series = eta_quotient_expansion(eq, max(rel, 1)) * Fraction(recipe.get('coeff', '1'))
        elif kind == 'eisenstein':
            series = eisenstein_expansion(recipe['name'], order)
        elif kind == 'linear':
            series = None
            for term in recipe['terms']:
                scale = int(term.get('scale', 1))
                sub = self.expansion(term['form'], -(-(order + 1) // scale) - 1 if scale > 1 else order)
                part = (sub.rescale(scale) if scale > 1 else sub) * Fraction(term['coeff'])
                series = part if series is None else series + part
        elif kind == 'product':
            series = None
            for factor in recipe['factors']:
                sub = self.expansion(factor, order)
                series = sub if series is None else series * sub
        else:
            series = self._expand_pullback(recipe, order)
        if series.lead_exp.denominator == 1:
            if series.prec_exp < order + 1:
                raise TruncationError(f"Recipe {recipe['kind']} produced precision q^{series.prec_exp} < q^{order + 1}")
            series = series.truncate_abs(order + 1)
        return series

    def _expand_pullback(self, recipe, order):
        param = PARAMETRIZATIONS[recipe['param']]
        working = order + 3
        t = self.expansion(param['t'], working)
        f = self.expansion(param['f'], working)
        num = QSeries.from_coeffs([Fraction(c) for c in recipe['num']], order=working)
        den = QSeries.from_coeffs([Fraction(c) for c in recipe['den']], order=working)
        prefactor = substitute(num, t) / substitute(den, t)
        series = prefactor * D(t) * f
        if recipe.get('shift_half'):
            series = alternate_signs(series.normalized())
        return series

    # -- checks ----------------------------------------------------------

    def identity_check(self, lhs, rhs, order=DEFAULT_ORDER):
        a = self.expansion(lhs, order)
        b = self.expansion(rhs, order)
        mismatch = a.first_mismatch(b, upto=min(a.prec_exp, b.prec_exp))
        if mismatch is None:
            return IdentityResult(_label(lhs), _label(rhs), order, True)
        logger.debug("identity %s = %s fails at q^%s", _label(lhs), _label(rhs), mismatch)
        return IdentityResult(_label(lhs), _label(rhs), order, False, mismatch, a.coeff(mismatch), b.coeff(mismatch))

    def fit_g2_constant(self, order=DEFAULT_ORDER):
        """Constant c of G2 = c + sum sigma_1(n) q^n forced by f1*f2hat = sum c_k G2(k z).

        The combination's coefficients sum to zero, so it pins the q^n tail
        for n >= 1 and leaves c free as long as f1*f2hat has no constant term.
        """
        prod = self.expansion('f1f2hat', order)
        total = sum(Fraction(t['coeff']) for t in self.entry('f1f2hat_eis').recipe['terms'])
        base = self.expansion('f1f2hat_eis', order)
        tail_mismatch = prod.first_mismatch(base - base.coeff(0) + prod.coeff(0))
        if total != 0:
            return G2Fit(prod.coeff(0) / total, tail_mismatch)
        if prod.coeff(0) != 0:
            return G2Fit(None, 0)
        return G2Fit(None, tail_mismatch)

    def lead_exp_consistent(self, name, order=16):
        """For eta entries: expansion lead equals sum d k / 24."""
        recipe = self.entry(name).recipe
        if recipe['kind'] != 'eta':
            return True
        eq = EtaQuotient.from_dict(recipe)
        return self.expansion(name, order).lead_exp == eq.lead_exp


def _label(spec):
    return spec if isinstance(spec, str) else canonical_json(spec)


_DEFAULT = None
_DEFAULT_LOCK = threading.Lock()


def default_registry():
    global _DEFAULT
    with _DEFAULT_LOCK:
        if _DEFAULT is None:
            _DEFAULT = FormRegistry()
        return _DEFAULT


def registry_expansion(name, order=DEFAULT_ORDER, registry=None):
    return (registry or default_registry()).expansion(name, order)


def identity_check(lhs, rhs, order=DEFAULT_ORDER, registry=None):
    return (registry or default_registry()).identity_check(lhs, rhs, order)
