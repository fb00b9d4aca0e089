"""Exception types raised across the package."""


class PolymaassError(Exception):
    pass


class PoleError(PolymaassError, ValueError):
    pass


class DomainError(PolymaassError, ValueError):
    pass


class ParameterBoxError(PolymaassError, ValueError):
    pass


class AccuracyError(PolymaassError, ArithmeticError):
    pass


class ConvergenceError(PolymaassError, ValueError):
    pass


class TailError(PolymaassError, ArithmeticError):
    pass


class ReductionError(PolymaassError, ArithmeticError):
    pass


class IterationError(ReductionError):
    pass


class WeightError(PolymaassError, ValueError):
    pass


class AliasError(PolymaassError, ValueError):
    pass


class TableMismatchError(PolymaassError, ValueError):
    pass


class BoundaryLengthError(PolymaassError, ValueError):
    pass


class UnknownIdentityError(PolymaassError, KeyError):
    pass


class ConsistencyError(PolymaassError, AssertionError):
    pass


class RangeError(PolymaassError, ValueError):
    pass
