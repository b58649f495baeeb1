"""Exception hierarchy.

Errors fall into three families that the command line maps to exit codes:
parse errors (2), precondition violations (3) and internal certificate
failures (4).
"""


class LievecError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(LievecError):
    """An input does not satisfy the requirements of an operation."""


class ArityMismatch(PreconditionError, ValueError):
    pass


class ContextMismatch(PreconditionError, ValueError):
    pass


class DimensionCapExceeded(PreconditionError):
    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"bracket closure exceeded dimension cap {cap}")


class NotClosed(LievecError):
    pass


class NotProjectable(PreconditionError):
    pass


class NotSolvable(PreconditionError):
    pass


class NotTransitive(PreconditionError):
    pass


class NotGradable(PreconditionError):
    pass


class DegreeOutOfRange(PreconditionError, ValueError):
    pass


class SingularJetMap(PreconditionError):
    pass


class NotClosedForm(LievecError):
    pass


class NotCertified(PreconditionError):
    pass


class BoundExceeded(LievecError):
    pass


class InternalCertificateFailure(LievecError):
    pass


class ParseError(LievecError, ValueError):
    def __init__(self, message, line=1, column=1, text=None):
        self.line = line
        self.column = column
        self.text = text
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
