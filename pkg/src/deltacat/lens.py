"""Delta lenses: a Get functor together with a Put lifting operation.

Lens(B) is the slice of Cof(B) over the trivial cofunctor, so most of the
work is delegated to the cofunctor module; L is ``underlying_cofunctor``.
"""

from __future__ import annotations

from dataclasses import dataclass

from deltacat.cofunctor import (
    CofMorphism,
    Cofunctor,
    LiftTable,
    _raise_law,
    check_lift_table,
    coproduct_cof,
    copair_cof,
    identity_cofunctor,
    lifting_laws,
    validate_cof_morphism,
)
from deltacat.errors import BoundaryMismatch, GetNotPreserved, NotApplicable
from deltacat.fincat import FinCategory, Functor, compose_functors, copair_functors, identity_functor, validate_functor
from deltacat.laws import LawCheck, first_failure


@dataclass(frozen=True)
class DeltaLens:
    get: Functor
    puts: LiftTable

    @property
    def source(self) -> FinCategory:
        return self.get.source

    @property
    def base(self) -> FinCategory:
        return self.get.target

    def __repr__(self) -> str:
        return f"DeltaLens({self.source!r} <=> {self.base!r}, {len(self.puts)} puts)"


def make_lens(get: Functor, puts) -> DeltaLens:
    return DeltaLens(get, dict(sorted(puts.items())))


def lens_laws(lens: DeltaLens) -> list[LawCheck]:
    """PutGet, PutId and PutPut. Assumes the Get is a functor and the table is well-shaped."""
    f = lens.get
    putget = LawCheck("axiom 1: get(put(a, u)) = u")
    for (a, u), w in lens.puts.items():
        putget.record(f.mor_map[w] == u, (a, u))
    checks = lifting_laws(lens.source, lens.base, f.obj_map, lens.puts, putget)
    checks[1].law = "axiom 2: put(a, id) = id"
    checks[2].law = "axiom 3: put(a, v . u) = put(a', v) . put(a, u)"
    return checks


def validate_lens(lens: DeltaLens) -> DeltaLens:
    validate_functor(lens.get)
    # the Put shares its object map with the Get, so f0 = phi0 holds by construction
    check_lift_table(lens.source, lens.base, lens.get.obj_map, lens.puts)
    failed = first_failure(lens_laws(lens))
    if failed is not None:
        _raise_law(failed)
    return lens


def get(lens: DeltaLens, w: str) -> str:
    return lens.get(w)


def put(lens: DeltaLens, a: str, u: str) -> str:
    try:
        return lens.puts[a, u]
    except KeyError:
        raise NotApplicable(f"{u!r} does not start at get({a!r})", witness=(a, u)) from None


def identity_lens(B: FinCategory) -> DeltaLens:
    return make_lens(identity_functor(B), identity_cofunctor(B).lifts)


def underlying_cofunctor(lens: DeltaLens) -> Cofunctor:
    """The forgetful functor L on objects: drop the Get's action on morphisms."""
    return Cofunctor(lens.source, lens.base, dict(lens.get.obj_map), dict(lens.puts))


def as_cof_morphism(lens: DeltaLens) -> CofMorphism:
    """A lens read as a morphism L(lens) -> trivial cofunctor in Cof(B)."""
    return validate_cof_morphism(lens.get, underlying_cofunctor(lens), identity_cofunctor(lens.base))


def lens_from_cof_morphism(m: CofMorphism) -> DeltaLens:
    if m.target != identity_cofunctor(m.source.base):
        raise BoundaryMismatch("codomain is not the trivial cofunctor")
    return validate_lens(DeltaLens(m.carrier, dict(m.source.lifts)))


# ---------------------------------------------------------------- Lens(B)


@dataclass(frozen=True)
class LensMorphism:
    source: DeltaLens
    target: DeltaLens
    carrier: Functor

    @property
    def cof_part(self) -> CofMorphism:
        return CofMorphism(underlying_cofunctor(self.source), underlying_cofunctor(self.target), self.carrier)


def validate_lens_morphism(h: Functor, dom: DeltaLens, cod: DeltaLens) -> LensMorphism:
    if dom.base != cod.base:
        raise BoundaryMismatch("lenses live over different bases")
    validate_lens(dom)
    validate_lens(cod)
    validate_cof_morphism(h, underlying_cofunctor(dom), underlying_cofunctor(cod))
    gh = compose_functors(cod.get, h)
    if gh != dom.get:
        w = next(w for w in dom.source.morphisms if gh.mor_map[w] != dom.get.mor_map[w])
        raise GetNotPreserved("codomain Get after the carrier differs from the domain Get", witness=(w,))
    return LensMorphism(dom, cod, h)


def identity_lens_morphism(lens: DeltaLens) -> LensMorphism:
    return LensMorphism(lens, lens, identity_functor(lens.source))


def compose_lens_morphisms(n: LensMorphism, m: LensMorphism) -> LensMorphism:
    """n after m."""
    if m.target != n.source:
        raise BoundaryMismatch("lens morphisms are not composable")
    return LensMorphism(m.source, n.target, compose_functors(n.carrier, m.carrier))


def forget_morphism(m: LensMorphism) -> CofMorphism:
    """L on morphisms."""
    return m.cof_part


def coproduct_lens(l1: DeltaLens, l2: DeltaLens) -> tuple[DeltaLens, LensMorphism, LensMorphism]:
    """Coproduct in Lens(B), created from the coproduct of underlying cofunctors."""
    if l1.base != l2.base:
        raise BoundaryMismatch("coproduct needs a shared base")
    total, inl, inr = coproduct_cof(underlying_cofunctor(l1), underlying_cofunctor(l2))
    codiagonal = copair_functors(l1.get, l2.get)
    lens = DeltaLens(codiagonal, dict(total.lifts))
    return lens, LensMorphism(l1, lens, inl.carrier), LensMorphism(l2, lens, inr.carrier)


def copair_lens(m: LensMorphism, n: LensMorphism) -> LensMorphism:
    if m.target != n.target:
        raise BoundaryMismatch("cocone legs have different targets")
    total, _, _ = coproduct_lens(m.source, n.source)
    mediator = copair_cof(m.cof_part, n.cof_part)
    return LensMorphism(total, m.target, mediator.carrier)
