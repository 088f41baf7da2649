"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ComplexCFError(Exception):
    """Base class for every error raised by the package."""


class PrecisionExhausted(ComplexCFError):
    """A ball predicate stayed undecided at the precision ceiling."""


class WrongRing(ComplexCFError):
    pass


class ReduciblePolynomial(ComplexCFError):
    pass


class ZeroLeadingCoefficient(ComplexCFError):
    pass


class IncomparableDiscriminants(ComplexCFError):
    pass


class ContainsZero(ComplexCFError):
    pass


class ZeroOnBoundary(ComplexCFError):
    pass


class Unsupported(ComplexCFError):
    pass


class ParameterOutOfRange(ComplexCFError):
    pass


class NotInTargetSet(ComplexCFError):
    pass


class HypothesisFailed(ComplexCFError):
    pass


class NotAZero(ComplexCFError):
    pass


class MonotonicityRequired(ComplexCFError):
    pass


class EnumerationLimit(ComplexCFError):
    pass


class FactorizationBudget(ComplexCFError):
    pass
