"""Exception types shared across the package."""


class SymgrassError(Exception):
    """Base class for all package errors."""


class NonPrime(SymgrassError):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class DegreeOutOfRange(SymgrassError):
    pass


class SpecMismatch(SymgrassError):
    pass


class DivisionByZero(SymgrassError):
    pass


class BudgetExceeded(SymgrassError):
    def __init__(self, needed, budget):
        super().__init__(f"needs {needed} units, budget is {budget}")
        self.needed = needed
        self.budget = budget


class IndexOutOfRange(SymgrassError):
    pass


class ShapeMismatch(SymgrassError):
    pass


class ZeroPolynomial(SymgrassError):
    pass


class SingularMatrix(SymgrassError):
    pass


class EvenCharacteristic(SymgrassError):
    pass


class NotMaximal(SymgrassError):
    pass


class CoefficientNotOne(SymgrassError):
    pass


class AlreadyMinimal(SymgrassError):
    pass


class LabelMismatch(SymgrassError):
    pass


class EmptyResult(SymgrassError):
    pass


class UnknownSuite(SymgrassError):
    pass


class UnsupportedFormat(SymgrassError):
    pass
