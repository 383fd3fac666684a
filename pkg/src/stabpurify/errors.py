"""Exception hierarchy shared by all modules."""


class StabPurifyError(Exception):
    """Base class for library errors."""


class DimensionError(StabPurifyError, ValueError):
    """Operands act on different numbers of qubits."""


class InvalidStateError(StabPurifyError, ValueError):
    """Generators are dependent, non-commuting or non-Hermitian."""


class InvalidCodeError(StabPurifyError, ValueError):
    """A code violates the check/logical algebra."""


class BudgetExceeded(StabPurifyError, RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class ParseError(StabPurifyError, ValueError):
    """Malformed text input. ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
