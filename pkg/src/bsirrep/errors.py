"""Exception hierarchy shared by all bsirrep modules."""


class BSIrrepError(Exception):
    """Base class for every error raised by this package."""


# numtheory
class NotInvertible(BSIrrepError, ArithmeticError):
    pass


class BudgetExceeded(BSIrrepError):
    pass


class FactorizationBudgetExceeded(BudgetExceeded):
    pass


class DivisorBudgetExceeded(BudgetExceeded):
    pass


class ZeroParameter(BSIrrepError, ValueError):
    pass


# cyclotomic
class DivisionByZero(BSIrrepError, ZeroDivisionError):
    pass


class OrderMismatch(BSIrrepError, ValueError):
    """Binary operation on cyclotomic numbers of different orders."""


class IncompatibleOrders(BSIrrepError, ValueError):
    """change_order target is not a multiple of the source order."""


# exactlinalg
class DimensionMismatch(BSIrrepError, ValueError):
    pass


class Singular(BSIrrepError, ArithmeticError):
    pass


# repcore / classify
class InvalidParams(BSIrrepError, ValueError):
    pass


class InvalidSpec(BSIrrepError, ValueError):
    pass


class StructureViolation(BSIrrepError):
    pass


class PreconditionFailed(BSIrrepError, ValueError):
    pass


class IncompatibleSpecs(BSIrrepError, ValueError):
    pass


# oracle
class WitnessVerificationFailed(BSIrrepError):
    """A constructed invariant subspace failed exact verification (internal bug)."""
