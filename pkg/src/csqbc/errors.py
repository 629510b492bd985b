"""Exception hierarchy shared by every module of the package."""


class CSQBCError(Exception):
    """Base class for all errors raised by :mod:`csqbc`."""


class NotSquare(CSQBCError, ValueError):
    pass


class NotHermitian(CSQBCError, ValueError):
    pass


class NotPSD(CSQBCError, ValueError):
    pass


class MatrixTooLarge(CSQBCError, ValueError):
    pass


class DimensionMismatch(CSQBCError, ValueError):
    pass


class InvalidState(CSQBCError, ValueError):
    """A vector or matrix violates a quantum-state invariant (norm, trace, positivity)."""


class DegenerateOutcome(CSQBCError, ArithmeticError):
    """A realized measurement branch has (numerically) zero norm."""


class InvalidSplit(CSQBCError, ValueError):
    pass


class OutOfRange(CSQBCError, ValueError):
    pass


class SingularDenominator(CSQBCError, ArithmeticError):
    pass


class UnknownProtocol(CSQBCError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the message readable.
        return str(self.args[0]) if self.args else ""


class ProtocolParseError(CSQBCError, ValueError):
    pass


class ProtocolValidationError(CSQBCError, ValueError):
    """Protocol document failed validation; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
