"""Exception types shared across the package."""


class M0nError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotDivisible(M0nError, ArithmeticError):
    pass


class DivisionByZero(M0nError, ZeroDivisionError):
    pass


class NonSquare(M0nError, ValueError):
    pass


class ZeroPolynomial(M0nError, ValueError):
    pass


class BadDiagonal(M0nError, ValueError):
    pass


class NotTranslationInvariant(M0nError, ValueError):
    pass


class BadIndex(M0nError, ValueError):
    pass


class BasisMismatch(M0nError, ValueError):
    pass


class InvalidHypertree(M0nError, ValueError):
    pass


class BadPivot(M0nError, ValueError):
    pass


class UnsupportedN(M0nError, ValueError):
    pass


class BadK(M0nError, ValueError):
    pass


class InvalidWeights(M0nError, ValueError):
    pass


class GcdViolation(M0nError, ValueError):
    pass


class ClassMismatch(M0nError, AssertionError):
    pass


class ParseError(M0nError, ValueError):
    pass
