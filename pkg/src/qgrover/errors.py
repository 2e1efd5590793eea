"""Exception hierarchy shared by the simulator, the search engine and the interpreter."""


class QGroverError(Exception):
    """Base class for every error raised by this package."""


class CapacityError(QGroverError):
    """Qubit budget exceeded or out of range."""


class InvalidRegister(QGroverError):
    """Register refers to qubits the machine does not own."""


class OverlapError(InvalidRegister):
    """Target and control registers share a qubit."""


class NumericalError(QGroverError):
    """State vector lost normalization beyond tolerance."""


class DomainError(QGroverError):
    """Argument outside the mathematical domain of an operation."""


class AncillaError(QGroverError):
    """Ancilla qubit was not in |0> when the operation required it."""


class RoundLimitError(QGroverError):
    """Repeat-until search exhausted its round budget."""


# -- QCL front end ----------------------------------------------------------


class QCLError(QGroverError):
    """Base for lexer, parser and evaluation errors of QCL programs."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class LexError(QCLError):
    pass


class ParseError(QCLError):
    def __init__(self, message, line=None, column=None, expected=()):
        self.expected = tuple(expected)
        if self.expected:
            message = f"{message} (expected {', '.join(self.expected)})"
        super().__init__(message, line, column)


class QCLRuntimeError(QCLError):
    pass


class UnboundName(QCLRuntimeError):
    pass


class TypeMismatch(QCLRuntimeError):
    pass


class EmptyInputFeed(QCLRuntimeError):
    pass


class RoundLimit(QCLRuntimeError):
    """`until` loop ran more iterations than the configured guard."""


class NonUnitaryInverse(QCLRuntimeError):
    """An adjoint call reached a measurement, reset, input, print or allocation."""


class UnsupportedFeature(QCLRuntimeError):
    pass
