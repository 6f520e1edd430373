"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``ParseError`` -> 1,
``SizeLimitExceeded`` -> 2, any other ``FintopError`` -> 3.
"""
from __future__ import annotations


class FintopError(Exception):
    """Base class for domain errors."""


class ParseError(FintopError):
    pass


class DuplicateLabel(FintopError):
    pass


class UnknownLabel(FintopError):
    pass


class UnknownVertex(FintopError):
    pass


class LabelClash(FintopError):
    """Two operands that must live on disjoint ground sets share a label."""


class GroundSetMismatch(FintopError):
    pass


class NotFiner(FintopError):
    pass


class NotBijective(FintopError):
    pass


class TransitivityBroken(FintopError):
    """Deleting comparabilities left a relation that is not transitive."""


class SizeLimitExceeded(FintopError):
    pass


class SizeMismatch(FintopError):
    pass


class RankMismatch(FintopError):
    pass


class RankOverflow(FintopError):
    pass
