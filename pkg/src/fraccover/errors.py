"""Exception hierarchy shared by all fraccover modules."""


class FracCoverError(Exception):
    """Base class for every error raised by fraccover."""


class DomainError(FracCoverError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(FracCoverError, ValueError):
    """A request would exceed a fixed resource guard (depth, grid size)."""


class InsufficientDataError(DomainError):
    """Too few usable scale entries remain for a fit."""


class DegenerateInputError(DomainError):
    """The input has no spread to regress against."""


class ReportError(FracCoverError):
    """A pipeline step failed; the message carries the fixture context."""
