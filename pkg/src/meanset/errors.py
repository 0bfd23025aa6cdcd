"""Exception hierarchy shared by every module."""


class MeansetError(Exception):
    """Base class for all library errors."""


class DomainError(MeansetError, ValueError):
    """An input lies outside the domain of an operation."""


class CompositionError(DomainError):
    """An intermediate value of a composed operator left the next stage's domain."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class IterationError(DomainError):
    """An iterate left the operator's domain."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ParseError(MeansetError, ValueError):
    """Syntax error in a set or descriptor expression."""

    def __init__(self, message, position=None, text=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position
        self.text = text
