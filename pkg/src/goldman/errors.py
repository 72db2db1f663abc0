"""Exception hierarchy shared by every module."""


class GoldmanError(Exception):
    """Base class for all library errors."""


class DomainError(GoldmanError, ValueError):
    """An operation was called outside its precondition."""


class ParseError(DomainError):
    """Malformed word text."""

    def __init__(self, message, offset=None):
        super().__init__(message)
        self.offset = offset


class ConstructionError(GoldmanError):
    """A surface representation could not be built from the given data."""


class DegenerateConfiguration(GoldmanError):
    """Geometry too close to tangency or coincidence to decide reliably."""


class Unsupported(GoldmanError):
    """Input is valid mathematically but outside what this library computes."""
