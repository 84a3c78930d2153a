from __future__ import annotations


class CharprodError(Exception):
    """Base class for all package errors."""


class GroupFormatError(CharprodError, ValueError):
    """A group description could not be parsed or does not define a group."""


class CapacityError(CharprodError, ValueError):
    """Input exceeds a configured size limit."""


class PreconditionError(CharprodError, ValueError):
    """An operation was called on inputs outside its domain."""


class NotACharacterError(CharprodError, ValueError):
    """A class function failed to decompose with non-negative integer coefficients."""


class ConstructionError(CharprodError, ValueError):
    """A requested group cannot be built with the stated properties."""


class DixonError(CharprodError, RuntimeError):
    """Character-table computation hit an inconsistency. Indicates a bug."""
