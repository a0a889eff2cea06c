"""Exception hierarchy.

Every error raised by the library derives from :class:`MatfacError`.  The CLI
maps :class:`ParseError` to exit code 2 and every other :class:`MatfacError`
to exit code 1.
"""


class MatfacError(Exception):
    """Base class for all library errors."""


class ParseError(MatfacError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


# coefficient ring
class ZeroDenominator(MatfacError):
    pass


class DenominatorNotUnit(MatfacError):
    pass


class NotDivisible(MatfacError):
    pass


class DegreeOverflow(MatfacError):
    pass


class FieldMismatch(MatfacError):
    pass


class OmegaIsZero(MatfacError):
    pass


class OmegaIsUnit(MatfacError):
    pass


# linear algebra
class DimensionMismatch(MatfacError):
    pass


class NotInvertibleOverS(MatfacError):
    pass


class NotInjective(MatfacError):
    pass


# categories
class NotSquare(MatfacError):
    pass


class CokerNotAnnihilated(MatfacError):
    def __init__(self, exponent, n):
        super().__init__(
            f"cokernel has invariant factor x^{exponent}, not killed by omega (n = {n})"
        )
        self.exponent = exponent
        self.n = n


class SquareNotCommuting(MatfacError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class OmegaMismatch(MatfacError):
    pass


class NotDeflation(MatfacError):
    pass


class NotInflation(MatfacError):
    pass


class ProductNotOmega(MatfacError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class RankMismatch(MatfacError):
    pass


class UnknownCommand(MatfacError):
    pass
