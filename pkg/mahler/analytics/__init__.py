"""
High-precision numerics: L-values, double L-values, CM constants and the
Mahler-measure relations built on them.
"""

from .cm import AsymptoticConstants, CMConstants, asymptotic_constants, cm_constants, log_coefficient_at_one, moments
from .double import DecayProfile, decay_profile, double_lvalue_holo, double_lvalue_merom, iterated_lvalue
from .headline import (
    CHECKS, Comparison, EisensteinChain, HeadlineReport, cor1_check, cor2_check, cor2_pointwise_identity,
    eisenstein_chain, headline_checks, mahler_via_lvalue, relation_check, rv_check,
)
from .lvalues import (
    FrickeFit, chowla_selberg, cusp_lvalue_direct, cusp_lvalue_mellin, dirichlet_lvalue, dirichlet_lvalue_direct,
    eichler_extrapolate, eichler_limit, eisenstein_bracket, eisenstein_decomposition, eisenstein_lvalue,
    fit_fricke_constant, lvalue_single, rv_constant,
)
from .quadrature import ChebyshevGrid, LValueResult, QuadratureSpec, axis_integral, integrate, series_tail_moment

__all__ = [
    'AsymptoticConstants', 'CMConstants', 'asymptotic_constants', 'cm_constants', 'log_coefficient_at_one', 'moments',
    'DecayProfile', 'decay_profile', 'double_lvalue_holo', 'double_lvalue_merom', 'iterated_lvalue',
    'CHECKS', 'Comparison', 'EisensteinChain', 'HeadlineReport', 'cor1_check', 'cor2_check', 'cor2_pointwise_identity',
    'eisenstein_chain', 'headline_checks', 'mahler_via_lvalue', 'relation_check', 'rv_check',
    'FrickeFit', 'chowla_selberg', 'cusp_lvalue_direct', 'cusp_lvalue_mellin', 'dirichlet_lvalue',
    'dirichlet_lvalue_direct', 'eichler_extrapolate', 'eichler_limit', 'eisenstein_bracket',
    'eisenstein_decomposition', 'eisenstein_lvalue', 'fit_fricke_constant', 'lvalue_single', 'rv_constant',
    'ChebyshevGrid', 'LValueResult', 'QuadratureSpec', 'axis_integral', 'integrate', 'series_tail_moment',
]
