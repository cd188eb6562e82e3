"""Error definitions shared by the library and the CLI."""

from pathlib import Path


class CodetError(Exception):
    """Base exception for all codet errors."""
    pass


class ArgumentError(CodetError):
    """Raised for arguments that violate an operation's preconditions."""

    def __init__(self, message: str):
        super().__init__(message)


class ShapeError(ArgumentError):
    """Raised when array shapes or embedding dimensions disagree."""
    pass


class NoValidAnchorsError(ArgumentError):
    """Raised when a pair-wise loss skips every anchor of the batch."""

    def __init__(self, loss: str):
        self.loss = loss
        super().__init__(f"{loss}: no anchor has the required positives/negatives")


class DegenerateBoxError(CodetError):
    """Raised when the overlap of two zero-area boxes is requested."""

    def __init__(self):
        super().__init__("Overlap is undefined for two zero-area boxes")


class NonFiniteError(CodetError):
    """Raised when a loss or a finite-difference sample is not finite."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        location = f" at step {step}" if step is not None else ""
        super().__init__(f"Non-finite value{location}: {message}")


class ConfigError(CodetError):
    """Raised for invalid configuration values."""
    pass


class ConfigParseError(ConfigError):
    """Raised when a config file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" at line {line}"
            if column is not None:
                location += f", column {column}"
        super().__init__(f"Parse error{location}: {message}")


class UnknownKeyError(ConfigError):
    """Raised when a config names a key the command does not accept."""

    def __init__(self, key: str, command: str):
        self.key = key
        super().__init__(f"Unknown key '{key}' for command '{command}'")


class RecordError(CodetError):
    """Raised for a malformed record in an input file."""

    def __init__(self, message: str, path: Path | str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(f"{where}{message}")
