"""Exception hierarchy shared by all modules."""


class SolvresError(Exception):
    """Base class for library errors."""


class ParseError(SolvresError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SolvresError):
    """Raised when an algebra or module definition violates its invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ZeroElementError(SolvresError, ValueError):
    """An operation that needs a nonzero element received zero."""


class StepCapExceeded(SolvresError, RuntimeError):
    """A completion or rewriting loop hit its safety cap."""


class MissingTrackingData(SolvresError):
    pass


class LengthExceeded(SolvresError, RuntimeError):
    pass
