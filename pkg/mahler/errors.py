#!/usr/bin/env python3
"""
Exception hierarchy shared by all mahler packages.
"""


class MahlerError(Exception):
    """Base class for all library errors."""


class TruncationError(MahlerError):
    """A coefficient or comparison was requested beyond the known order."""


class SeriesDomainError(MahlerError):
    """Operation undefined for the given series (constant term, fractional exponent, zero divisor)."""


class UnknownFormError(MahlerError, KeyError):
    """Form id is not present in the registry."""

    def __str__(self):
        return Exception.__str__(self)


class RecipeError(MahlerError):
    """A registry recipe is malformed or cannot be expanded."""


class PoleError(MahlerError):
    """Evaluation requested at (or too close to) a pole."""


class PrecisionError(MahlerError):
    """Requested working precision is below the supported minimum."""


class UnsupportedLimitError(MahlerError):
    """Endpoint limit pattern is not one of the supported cancellation cases."""


class IndicialError(MahlerError):
    """Expansion point is not a point of maximal unipotent monodromy."""


class BranchError(MahlerError):
    """Square-root branch jumped between adjacent sample points."""
