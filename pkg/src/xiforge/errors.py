"""Exception types shared across the package."""


class XiForgeError(Exception):
    """Base class for every error raised by xiforge."""


class DomainError(XiForgeError, ValueError):
    """Argument outside the domain of an operation."""


class PoleError(DomainError):
    """Argument sits on a pole of a map or special function."""


class TruncationError(XiForgeError):
    """A truncated sum or series is too short for the requested accuracy."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class AccuracyLossError(XiForgeError):
    """The requested precision cannot be reached; carries achieved digits."""

    def __init__(self, message, achieved_digits):
        super().__init__(message)
        self.achieved_digits = achieved_digits


class InvariantViolation(XiForgeError):
    """A stored or computed value breaks a documented invariant."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class CacheFormatError(XiForgeError):
    """Malformed coefficient cache file."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
