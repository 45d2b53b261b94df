"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for parse/usage problems, 2 for domain rejections, 3 for numerical failures.
"""


class SchroederError(Exception):
    exit_code = 2


class ParseError(SchroederError, ValueError):
    exit_code = 1


class DomainError(SchroederError, ValueError):
    """Input lies outside the domain where an operation is defined."""

    exit_code = 2


class NumericalFailure(SchroederError, ArithmeticError):
    """A computation did not reach its accuracy target."""

    exit_code = 3


# series arithmetic
class CenterMismatch(DomainError):
    pass


class OrderMismatch(DomainError):
    pass


class OrderExceeded(DomainError):
    pass


class ZeroConstantTerm(DomainError):
    pass


# symbols
class PoleInDisc(DomainError):
    pass


class NotSelfMap(DomainError):
    pass


class NoInteriorFixedPoint(DomainError):
    pass


class NearUnitMultiplier(DomainError):
    pass


class NotAFixedPoint(DomainError):
    pass


class NotSchroeder(DomainError):
    pass


class AutomorphismSymbol(DomainError):
    pass


class NotRealMultiplier(DomainError):
    pass


# projections
class TooLarge(DomainError):
    pass


class IndexExceeded(DomainError):
    pass


# solver
class ZeroLambda(DomainError):
    pass


class EigenvalueCollision(DomainError):
    pass


class LambdaTooSmall(DomainError):
    pass


class IncompatibleRHS(DomainError):
    pass


class SpectrumPoint(DomainError):
    pass


class InsufficientOrder(DomainError):
    pass


class NonConvergence(NumericalFailure):
    pass


class SmallDivisor(NumericalFailure):
    pass


class ResidualTooLarge(NumericalFailure):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class NonFinite(NumericalFailure):
    pass
