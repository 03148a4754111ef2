"""Exception hierarchy shared by all modules."""


class CarlemanError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CarlemanError, ValueError):
    pass


class NotDivisible(CarlemanError, ArithmeticError):
    pass


class ParseError(CarlemanError, ValueError):
    pass


# weight sequences
class ParameterOutOfRange(CarlemanError, ValueError):
    pass


class TableNotNormalized(CarlemanError, ValueError):
    pass


class InsufficientTable(CarlemanError, ValueError):
    pass


class PrecisionExhausted(CarlemanError, ArithmeticError):
    """An interval comparison straddled equality at the working precision."""


# invariant theory
class OrderBoundExceeded(CarlemanError, RuntimeError):
    pass


class SingularGenerator(CarlemanError, ValueError):
    pass


class NotInvariant(CarlemanError, ValueError):
    pass


class NotInAlgebra(CarlemanError, RuntimeError):
    pass


# symmetric core
class IndexOutOfRange(CarlemanError, IndexError):
    pass


class NotSymmetric(CarlemanError, ValueError):
    pass


class NotBlockSymmetric(CarlemanError, ValueError):
    pass


class NotLogConvex(CarlemanError, ValueError):
    pass


# coinvariants
class SizeBoundExceeded(CarlemanError, ValueError):
    pass


class DeltaDivisionFailed(CarlemanError, RuntimeError):
    pass


class NotASubgroup(CarlemanError, ValueError):
    pass


# equivariant
class NotEquivariant(CarlemanError, ValueError):
    pass


class NotInModule(CarlemanError, RuntimeError):
    pass
