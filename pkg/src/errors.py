from typing import Any


class BinMeasureError(ValueError):
    """Base class for every error raised on bad input."""


class UsageError(BinMeasureError):
    """Unknown names, bad parameters, malformed invocations."""


class StructuralError(BinMeasureError):
    """Operands that do not live on the same carrier."""


class PreconditionError(BinMeasureError):
    """An operation was called outside its stated precondition."""


class DomainError(BinMeasureError):
    """A set or point lies outside the declared domain of a measure."""


class IntegrabilityError(BinMeasureError):
    """The integrability condition of an integral does not hold."""


class DerivabilityError(BinMeasureError):
    """A measure takes different values on arbitrarily small sets around a point."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DiagnosticError(BinMeasureError):
    """A hypothesis of a check was found violated; `witness` names where."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class LiteralError(UsageError):
    """Syntax or semantic error in a text literal."""

    def __init__(self, kind: str, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{kind} literal, line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column
