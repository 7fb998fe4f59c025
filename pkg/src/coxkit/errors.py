"""Exception hierarchy.

The CLI maps the three families onto exit codes: input errors (2),
semantic validation errors (3) and verification failures (4).
"""

from __future__ import annotations


class CoxkitError(Exception):
    exit_code = 1


class InputError(CoxkitError):
    exit_code = 2


class ValidationError(CoxkitError):
    exit_code = 3


class VerificationError(CoxkitError):
    exit_code = 4


class DimensionMismatch(InputError):
    pass


class Singular(ValidationError):
    pass


class NotNilpotent(ValidationError):
    pass


class IncompleteSpectrum(VerificationError):
    pass


class InvalidFan(ValidationError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotAFace(ValidationError):
    pass


class DualityViolation(ValidationError):
    pass


class BettiMismatch(VerificationError):
    pass


class NotDegreeOne(InputError):
    pass


class VerificationFailed(VerificationError):
    pass


class NonMonotone(ValidationError):
    pass


class NegativeCount(ValidationError):
    pass


class MalformedType(ValidationError):
    pass


class ZeroEigenvalue(InputError):
    pass


class DimensionCap(InputError):
    pass


class EigenvalueMismatch(ValidationError):
    pass
