"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class MGError(Exception):
    """Base class for all package errors."""


class EmptyString(MGError):
    pass


class SimpleTree(MGError):
    pass


class BadAddress(MGError):
    pass


class Undefined(MGError):
    pass


class DomainError(MGError):
    pass


class NotASelector(MGError):
    pass


class NotALicensor(MGError):
    pass


class LexiconSyntaxError(MGError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ShapeError(MGError):
    pass


class MissingComplementizer(MGError):
    pass


class Underflow(MGError):
    pass


class NotAPermutation(MGError):
    pass


class CapacityExceeded(MGError):
    pass


class NonFaithfulScheme(MGError):
    pass


class SimpleVector(MGError):
    pass


class UnknownFeature(MGError):
    pass


class DepthExceeded(MGError):
    pass


class StuckTrace(MGError):
    pass


class MissingWeight(MGError):
    pass


class AlignmentError(MGError):
    pass


class DegenerateInput(MGError):
    pass
