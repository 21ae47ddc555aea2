"""Exception types shared across the package."""


class ColoringError(Exception):
    pass


class DuplicateEdge(ColoringError, KeyError):
    pass


class MissingEdge(ColoringError, KeyError):
    pass


class DegreeBoundViolated(ColoringError, ValueError):
    """The update stream broke its promised maximum-degree bound."""


class InvalidEpsilon(ColoringError, ValueError):
    pass


class IndexOutOfRange(ColoringError, IndexError):
    pass


class StreamParseError(ColoringError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class OracleMismatch(ColoringError, AssertionError):
    """Dynamic state diverged from the from-scratch recomputation."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
