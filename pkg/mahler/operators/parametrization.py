#!/usr/bin/env python3
"""
Modular parametrization checks in series form.

For a modular function t(q) and a form f of weight k, the operator
L_{t,f} psi = D^(k+1)(psi / f) / (Dt * f) acting on psi(t(q)) must equal
(1/t) L_n(t, theta) psi. Both sides are evaluated on an arbitrary truncated
series in t composed with t(q) and compared exactly.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from ..forms.registry import PARAMETRIZATIONS, default_registry
from ..series import D, QSeries, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParametrizationCheck:
    param: str
    order: int
    equal: bool
    first_mismatch: object = None


def _random_series(rng, order):
    return QSeries.from_coeffs([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(order + 1)])


def parametrization_lhs(param, psi_t, order, registry=None):
    """D^(k+1)(psi(t(q)) / f) / (Dt f) as a q-series."""
    registry = registry or default_registry()
    data = PARAMETRIZATIONS[param]
    t = registry.expansion(data['t'], order)
    f = registry.expansion(data['f'], order)
    psi = substitute(psi_t, t)
    quotient = psi / f
    for _ in range(data['weight'] + 1):
        quotient = D(quotient)
    return quotient / (D(t) * f)


def parametrization_rhs(param, op, psi_t, order, registry=None):
    """(1/t) (L psi)(t(q)) as a q-series."""
    registry = registry or default_registry()
    t = registry.expansion(PARAMETRIZATIONS[param]['t'], order)
    return substitute(op.apply(psi_t), t) / t


def check_parametrization(param, op, order=150, seed=1, registry=None):
    """Compare both sides on a random series in t; exact to `order`."""
    rng = random.Random(seed)
    working = order + 4
    psi_t = _random_series(rng, working)
    lhs = parametrization_lhs(param, psi_t, working, registry)
    rhs = parametrization_rhs(param, op, psi_t, working, registry)
    upto = min(lhs.prec_exp, rhs.prec_exp, order + 1)
    mismatch = lhs.first_mismatch(rhs, upto=upto)
    logger.debug("%s parametrization checked to q^%s: %s", param, upto, 'ok' if mismatch is None else mismatch)
    return ParametrizationCheck(param, order, mismatch is None, mismatch)
