"""Semantic exception hierarchy.

Every public operation either returns a validated value or raises one of
these; nothing is silently clamped or coerced.
"""

from __future__ import annotations


class HpyeError(Exception):
    """Base error for this package."""


class ValidationError(HpyeError, ValueError):
    """Inputs violate a domain contract."""


class InvalidHealthState(ValidationError):
    """Health-state label is empty or not a string."""


class OutOfRangeProductivity(ValidationError):
    """Productivity must be a finite number in [0, 1]."""


class NegativeOrNonFiniteLifetime(ValidationError):
    """Lifetime must be a finite number >= 0."""


class FullHealthWeightNotOne(ValidationError):
    """The designated full-health state must carry quality weight exactly 1."""


class WeightOutOfRange(ValidationError):
    """A value-table weight lies outside [0, 1]."""


class RSConstraintViolated(ValidationError):
    """The paired (r, s) tables violate their joint bound constraints."""


class InvalidParameter(ValidationError):
    """A family parameter is missing, out of range, or not applicable."""


class NonPositiveLifetime(ValidationError):
    """Operation requires strictly positive lifetimes."""


class ParameterOutOfRange(ValidationError):
    """Free parameter lies outside the admissible range."""


class MalformedDocument(ValidationError):
    """A distribution or spec document failed to parse; message carries the locus."""


class UnknownHealthState(HpyeError, KeyError):
    """A health state is not present in the relevant value table."""

    def __str__(self) -> str:  # KeyError quotes its arg; keep messages readable
        return Exception.__str__(self)


class UnsupportedFamily(HpyeError):
    """The family cannot be evaluated as configured (e.g. missing user equivalent function)."""


class UnsupportedAxiomForFamily(HpyeError):
    """The spec cannot express the axiom's premise (currently never raised by built-ins)."""


class RootCountUnstable(HpyeError, ArithmeticError):
    """Sign pattern changed between grid refinements; re-run with a finer grid."""
