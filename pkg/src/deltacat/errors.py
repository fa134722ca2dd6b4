"""Exception hierarchy. Every failure of a universally quantified law carries a witness."""

from __future__ import annotations

from typing import Any


class DeltaCatError(Exception):
    """Base class. ``witness`` is the offending tuple, when there is one."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is None:
            return self.message
        return f"{self.message} (witness: {self.witness!r})"


class MalformedInput(DeltaCatError):
    pass


class MalformedCategory(MalformedInput):
    pass


class NotComposable(DeltaCatError):
    pass


class NotAFunctor(DeltaCatError):
    pass


class BoundaryMismatch(DeltaCatError):
    pass


class UnknownMorphism(DeltaCatError):
    pass


class LiftMissing(DeltaCatError):
    pass


class NotApplicable(DeltaCatError):
    pass


class LawViolation(DeltaCatError):
    def __init__(self, message: str, axiom: int | str, witness: Any = None):
        super().__init__(message, witness)
        self.axiom = axiom


class NotBOO(DeltaCatError):
    pass


class NotDopf(DeltaCatError):
    pass


class ObjectMapMismatch(DeltaCatError):
    pass


class LiftNotPreserved(DeltaCatError):
    pass


class GetNotPreserved(DeltaCatError):
    pass


class TriangleViolation(DeltaCatError):
    def __init__(self, message: str, which: str, witness: Any = None):
        super().__init__(message, witness)
        self.which = which


class CounitLawViolation(DeltaCatError):
    pass


class ComultLawViolation(DeltaCatError):
    pass


class ComonadLawViolation(DeltaCatError):
    pass


class BoundsExceeded(DeltaCatError):
    pass
