"""Exception types raised by validators and constructors.

Every error names the offending datum (triple, element, pair of maps, ...)
so that failures reproduce without re-running the whole validation.
"""

from __future__ import annotations


class CrossBeurlingError(Exception):
    """Base class for all package errors."""


class ValidationError(CrossBeurlingError):
    """A domain object failed construction-time validation."""


# -- groups ------------------------------------------------------------------

class NotAssociative(ValidationError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"multiplication table is not associative at triple {triple}")


class NoIdentity(ValidationError):
    def __init__(self):
        super().__init__("multiplication table has no two-sided identity")


class NoInverse(ValidationError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no inverse")


class NotSubmultiplicative(ValidationError):
    def __init__(self, pair, lhs, rhs):
        self.pair = pair
        super().__init__(
            f"weight is not submultiplicative at {pair}: w(st)={lhs:.6g} > w(s)w(t)={rhs:.6g}"
        )


class NotMultiplicative(ValidationError):
    def __init__(self, where, detail=""):
        self.where = where
        super().__init__(f"multiplicativity fails at {where}{': ' + detail if detail else ''}")


# -- algebras / dynamics -----------------------------------------------------

class DimensionMismatch(ValidationError):
    def __init__(self, expected, got):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")


class NotHomomorphism(ValidationError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"action is not a homomorphism at group pair {pair}")


class NotInvertible(ValidationError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"action matrix for element {element} is not invertible")


# -- pairs / crossed products ------------------------------------------------

class CovarianceViolated(ValidationError):
    def __init__(self, where):
        self.where = where
        super().__init__(f"covariance law violated at {where}")


class FlavorMismatch(ValidationError):
    pass


class KernelNotIdeal(CrossBeurlingError):
    """Numerical tolerance failure: the seminorm kernel did not close under products."""


class KernelNotRespected(CrossBeurlingError):
    """A pair's integrated form does not vanish on the seminorm kernel."""


class NotNonDegenerate(CrossBeurlingError):
    pass


class NotCentralizer(ValidationError):
    pass


class NotCommuting(ValidationError):
    def __init__(self, first, second):
        self.maps = (first, second)
        super().__init__(f"maps do not commute: {first} vs {second}")


class DivisionUndefined(CrossBeurlingError):
    """sigma_2(f) = 0 while sigma_1(f) > 0; the ratio has no finite bound."""


class HypothesisViolated(CrossBeurlingError):
    def __init__(self, hypothesis):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis violated: {hypothesis}")


class NoApproximateIdentity(CrossBeurlingError):
    def __init__(self, side="any"):
        super().__init__(f"algebra has no {side}-sided identity element")


class NormCertificationError(CrossBeurlingError):
    """A computation needed an exact norm but only non-matching bounds were available."""


class ConfigError(CrossBeurlingError):
    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super().__init__(f"config error at {path}: {reason}")
