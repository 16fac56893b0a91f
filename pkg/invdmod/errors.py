"""Exception hierarchy shared by every invdmod module."""

from __future__ import annotations

from typing import Optional


class InvDModError(ValueError):
    """Base class for domain errors raised by invdmod operations."""


class InvalidRank(InvDModError):
    """A Cartan type was requested with a rank its series does not allow."""


class GroupMismatch(InvDModError):
    """Two representation classes (or a class and a group) live over different groups."""


class DimensionMismatch(InvDModError):
    """Matrix sizes, ranks or torus dimensions disagree."""


class IrrationalSpectrum(InvDModError):
    """A characteristic polynomial does not split over the rationals."""


class NonSemisimpleTuple(InvDModError):
    """A commuting tuple on a higher-dimensional torus is not simultaneously diagonalizable."""


class NonCommutingData(InvDModError):
    """Matrices required to commute do not."""


class NonUnitDeterminant(InvDModError):
    """A Laurent gauge matrix has a determinant that is not of the form c*t^k."""


class UnsupportedSize(InvDModError):
    """A builtin algebra or symbolic check was requested beyond its supported size."""


class PreconditionFailed(InvDModError):
    """An operation was called outside its documented precondition."""


class DegreeLimitExceeded(InvDModError):
    """A symbolic polynomial grew past the configured degree cap."""


class ConfigError(InvDModError):
    """An INVDMOD_* setting could not be parsed."""


class MalformedInput(InvDModError):
    """A JSON payload or command-line argument does not match its schema."""

    def __init__(self, message: str, position: Optional[str] = None) -> None:
        self.position = position
        if position:
            message = f"{message} (at {position})"
        super().__init__(message)
