"""Exception types shared across the package."""


class LogicNetError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LogicNetError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(LogicNetError, ValueError):
    """A specification object (network, dataset, operator) is inconsistent."""


class ParseError(LogicNetError, ValueError):
    """Expression text could not be parsed.  Carries a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class CompileError(LogicNetError, ValueError):
    """An expression tree contains a construct the compiler cannot lower."""


class TrainingError(LogicNetError, RuntimeError):
    """Training diverged or was driven through an invalid transition."""

    def __init__(self, message: str, step: int | None = None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step


class ModelFormatError(LogicNetError, ValueError):
    """A model file failed to parse or validate.  Carries the field path."""

    def __init__(self, message: str, path: str = ""):
        if path:
            message = f"{message} (at {path})"
        super().__init__(message)
        self.path = path
