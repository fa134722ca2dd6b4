"""Brute-force enumeration over small categories.

Generate every candidate assignment, keep those that pass the validators.
The only pruning is by boundaries (a morphism a -> a' may only go to a
morphism between the images), so the oracle never uses the constructions
it is meant to check, apart from needing the cofree apex as a codomain.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from deltacat.cofree import Coalgebra, lr, validate_coalgebra
from deltacat.cofunctor import CofMorphism, Cofunctor, cof_morphism_conditions, is_cofunctor
from deltacat.errors import BoundsExceeded, DeltaCatError
from deltacat.fincat import FinCategory, Functor, functor_laws
from deltacat.lens import DeltaLens, validate_lens


@dataclass(frozen=True)
class EnumBounds:
    max_objects: int = 3
    max_morphisms: int = 9

    def __post_init__(self):
        if self.max_objects < 0 or self.max_morphisms < 0:
            raise ValueError("bounds must be non-negative")

    def check(self, *cats: FinCategory) -> None:
        for C in cats:
            if len(C.objects) > self.max_objects or len(C.src) > self.max_morphisms:
                raise BoundsExceeded(
                    f"category with {len(C.objects)} objects and {len(C.src)} morphisms exceeds bounds "
                    f"({self.max_objects}, {self.max_morphisms})",
                    witness=(len(C.objects), len(C.src)),
                )


DEFAULT_BOUNDS = EnumBounds()


def _object_maps(A: FinCategory, B: FinCategory) -> Iterator[dict[str, str]]:
    for images in itertools.product(B.objects, repeat=len(A.objects)):
        yield dict(zip(A.objects, images))


def _functors_with(A: FinCategory, B: FinCategory, obj_map: dict[str, str]) -> Iterator[Functor]:
    choices = [B.hom(obj_map[A.src[w]], obj_map[A.tgt[w]]) for w in A.morphisms]
    for images in itertools.product(*choices):
        F = Functor(A, B, obj_map, dict(zip(A.morphisms, images)))
        if all(check.ok for check in functor_laws(F)):
            yield F


def enumerate_functors(A: FinCategory, B: FinCategory, bounds: EnumBounds = DEFAULT_BOUNDS) -> list[Functor]:
    bounds.check(A, B)
    return [F for obj_map in _object_maps(A, B) for F in _functors_with(A, B, obj_map)]


def _lift_tables(A: FinCategory, B: FinCategory, obj_map: dict[str, str]) -> Iterator[dict]:
    keys = [(a, u) for a in A.objects for u in B.out(obj_map[a])]
    choices = [A.out(a) for a, _ in keys]
    for images in itertools.product(*choices):
        yield dict(zip(keys, images))


def enumerate_cofunctors(A: FinCategory, B: FinCategory, bounds: EnumBounds = DEFAULT_BOUNDS) -> list[Cofunctor]:
    bounds.check(A, B)
    found = []
    for obj_map in _object_maps(A, B):
        for table in _lift_tables(A, B, obj_map):
            phi = Cofunctor(A, B, obj_map, table)
            if is_cofunctor(phi):
                found.append(phi)
    return found


def enumerate_lenses_over(phi: Cofunctor, bounds: EnumBounds = DEFAULT_BOUNDS) -> list[DeltaLens]:
    """Every lens whose underlying cofunctor is phi: all Gets extending phi0, filtered by the lens laws."""
    bounds.check(phi.source, phi.base)
    found = []
    for f in _functors_with(phi.source, phi.base, dict(phi.obj_map)):
        lens = DeltaLens(f, dict(phi.lifts))
        try:
            validate_lens(lens)
        except DeltaCatError:
            continue
        found.append(lens)
    return found


def enumerate_cof_morphisms(phi: Cofunctor, gamma: Cofunctor) -> list[CofMorphism]:
    """All morphisms phi -> gamma in Cof(B), by filtering every functor between the sources."""
    A, C = phi.source, gamma.source
    found = []
    for obj_map in _object_maps(A, C):
        for h in _functors_with(A, C, obj_map):
            if all(check.ok for check in cof_morphism_conditions(h, phi, gamma)):
                found.append(CofMorphism(phi, gamma, h))
    return found


def enumerate_coalgebras(phi: Cofunctor, bounds: EnumBounds = DEFAULT_BOUNDS) -> list[Coalgebra]:
    bounds.check(phi.source, phi.base)
    found = []
    for h in enumerate_cof_morphisms(phi, lr(phi)):
        try:
            found.append(validate_coalgebra(phi, h))
        except DeltaCatError:
            continue
    return found


def enumerate_lens_candidates(A: FinCategory, B: FinCategory, bounds: EnumBounds = DEFAULT_BOUNDS) -> Iterator[DeltaLens]:
    """Unvalidated (Get, Put) pairs: every functor with every source-respecting table.

    Most of them break at least one lens law, which is the point.
    """
    bounds.check(A, B)
    for obj_map in _object_maps(A, B):
        gets = list(_functors_with(A, B, obj_map))
        if not gets:
            continue
        for table in _lift_tables(A, B, obj_map):
            for f in gets:
                yield DeltaLens(f, table)


# ------------------------------------------------------------------ sweeps


def sweep_cofunctors(cats: dict[str, FinCategory], bounds: EnumBounds = DEFAULT_BOUNDS) -> Iterator[tuple[str, str, Cofunctor]]:
    """Every cofunctor between every ordered pair of the given categories."""
    for (na, A), (nb, B) in itertools.product(cats.items(), repeat=2):
        for phi in enumerate_cofunctors(A, B, bounds):
            yield na, nb, phi


def sweep_lenses(cats: dict[str, FinCategory], bounds: EnumBounds = DEFAULT_BOUNDS) -> Iterator[tuple[str, str, DeltaLens]]:
    for na, nb, phi in sweep_cofunctors(cats, bounds):
        for lens in enumerate_lenses_over(phi, bounds):
            yield na, nb, lens
