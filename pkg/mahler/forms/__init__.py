"""
Modular objects: eta quotients, Eisenstein series, the form registry and
pointwise evaluation.
"""

from .characters import CHI_M3, CHI_M15, TRIVIAL, DirichletChar, kronecker_symbol
from .eisenstein import EISENSTEIN, EisensteinSpec, divisor_sums, eisenstein_expansion
from .eta import (EtaQuotient, FrickeImage, dedekind_sum, eta_expansion, eta_multiplier,
                  eta_quotient_expansion, eta_quotient_value, eta_value, fricke_image)
from .evaluate import (derive_dt_relation, dt_value, e2_value, form_value, g2_value,
                       parametrization_values, series_value)
from .registry import (DEFAULT_FORMS, IDENTITIES, PARAMETRIZATIONS, FormEntry, FormRegistry, G2Fit,
                       IdentityResult, default_registry, identity_check, registry_expansion)

__all__ = [
    'CHI_M3', 'CHI_M15', 'TRIVIAL', 'DirichletChar', 'kronecker_symbol',
    'EISENSTEIN', 'EisensteinSpec', 'divisor_sums', 'eisenstein_expansion',
    'EtaQuotient', 'FrickeImage', 'dedekind_sum', 'eta_expansion', 'eta_multiplier',
    'eta_quotient_expansion', 'eta_quotient_value', 'eta_value', 'fricke_image',
    'derive_dt_relation', 'dt_value', 'e2_value', 'form_value', 'g2_value',
    'parametrization_values', 'series_value',
    'DEFAULT_FORMS', 'IDENTITIES', 'PARAMETRIZATIONS', 'FormEntry', 'FormRegistry', 'G2Fit',
    'IdentityResult', 'default_registry', 'identity_check', 'registry_expansion',
]
