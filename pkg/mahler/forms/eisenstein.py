#!/usr/bin/env python3
"""
Eisenstein series as twisted divisor sums.

Each series is  constant + sum_n ( sum_{d m = n} chi(d) d^power psi(m) ) q^n,
so its L-function is L(psi, s) * L(chi, s - power).
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnknownFormError
from ..series import QSeries
from .characters import CHI_M3, TRIVIAL, DirichletChar


@dataclass(frozen=True)
class EisensteinSpec:
    name: str
    weight: int
    constant: Fraction
    power: int
    chi: DirichletChar
    psi: DirichletChar


EISENSTEIN = {
    'E4': EisensteinSpec('E4', 4, Fraction(1, 240), 3, TRIVIAL, TRIVIAL),
    'E3chi': EisensteinSpec('E3chi', 3, Fraction(-1, 9), 2, CHI_M3, TRIVIAL),
    'E3chi_tilde': EisensteinSpec('E3chi_tilde', 3, Fraction(0), 2, TRIVIAL, CHI_M3),
    'E1': EisensteinSpec('E1', 1, Fraction(1, 6), 0, CHI_M3, TRIVIAL),
    # quasi-modular; FormRegistry.fit_g2_constant checks this constant
    'G2': EisensteinSpec('G2', 2, Fraction(-1, 24), 1, TRIVIAL, TRIVIAL),
}


def divisor_sums(order, power, chi=TRIVIAL, psi=TRIVIAL):
    """[a_0, ..., a_order] with a_n = sum_{d m = n} chi(d) d^power psi(m), a_0 = 0."""
    sums = [0] * (order + 1)
    for d in range(1, order + 1):
        cd = chi(d)
        if not cd:
            continue
        dp = cd * d ** power
        for m in range(1, order // d + 1):
            pm = psi(m)
            if pm:
                sums[d * m] += dp * pm
    return sums


def eisenstein_spec(name):
    try:
        return EISENSTEIN[name]
    except KeyError:
        raise UnknownFormError(f"Unknown Eisenstein series '{name}' (known: {', '.join(sorted(EISENSTEIN))})")


def eisenstein_expansion(name, order):
    """Divisor-sum expansion known modulo q^(order+1)."""
    spec = eisenstein_spec(name)
    coeffs = divisor_sums(order, spec.power, spec.chi, spec.psi)
    coeffs[0] = spec.constant
    return QSeries.from_coeffs(coeffs)
