"""Exception types shared across the package."""


class DunklError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(DunklError, ValueError):
    """Operands live in algebras of different dimension."""


class GeneratorIndexError(DunklError, IndexError):
    """A generator or metric index is outside its admissible range."""


class UsageError(DunklError, ValueError):
    """Invalid request, e.g. an unknown identity filter."""


class PreconditionError(DunklError, ValueError):
    """An input violates a documented precondition."""


class DomainError(DunklError, ValueError):
    """Evaluation outside the domain (e.g. at the origin)."""


class EngineDefect(DunklError, RuntimeError):
    """An internal invariant failed; results cannot be trusted."""


class ParseError(DunklError, ValueError):
    """Syntax or index error in an operator expression."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
