"""Cofunctors A -/-> B over a fixed base, in both presentations.

The stored form is an object map plus a dense lifting table
``lifts[(a, u)]`` for every object ``a`` of A and every base morphism ``u``
out of ``obj_map[a]``. The span form ``A <- X -> B`` (bijective-on-objects
left leg, discrete opfibration right leg) is derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from deltacat.errors import (
    BoundaryMismatch,
    DeltaCatError,
    LawViolation,
    LiftMissing,
    LiftNotPreserved,
    NotApplicable,
    NotBOO,
    NotDopf,
    ObjectMapMismatch,
)
from deltacat.fincat import (
    FinCategory,
    Functor,
    category_from_parts,
    compose_functors,
    coproduct_cat,
    copair_functors,
    dopf_witness,
    identity_functor,
    is_bijective_on_objects,
    make_functor,
    pair,
    validate_functor,
)
from deltacat.laws import LawCheck, first_failure

LiftTable = dict[tuple[str, str], str]


@dataclass(frozen=True)
class Cofunctor:
    source: FinCategory
    base: FinCategory
    obj_map: dict[str, str]
    lifts: LiftTable

    def applicable_pairs(self) -> list[tuple[str, str]]:
        """The pairs (a, u) the lifting table must cover, in lexicographic order."""
        return [(a, u) for a in self.source.objects for u in self.base.out(self.obj_map[a])]

    def __repr__(self) -> str:
        return f"Cofunctor({self.source!r} -/-> {self.base!r}, {len(self.lifts)} lifts)"


def make_cofunctor(source: FinCategory, base: FinCategory, obj_map, lifts) -> Cofunctor:
    return Cofunctor(source, base, dict(sorted(obj_map.items())), dict(sorted(lifts.items())))


def check_lift_table(
    source: FinCategory, base: FinCategory, obj_map: dict[str, str], lifts: LiftTable
) -> None:
    """Shape checks shared by cofunctors and lenses: object map total, table dense and well-typed."""
    for a in source.objects:
        if obj_map.get(a) not in base.identity:
            raise ObjectMapMismatch(f"object {a!r} has no image in the base", witness=(a, obj_map.get(a)))
    if set(obj_map) != set(source.objects):
        raise ObjectMapMismatch("object map has entries outside the source", witness=sorted(set(obj_map) - set(source.objects)))
    for a in source.objects:
        for u in base.out(obj_map[a]):
            if (a, u) not in lifts:
                raise LiftMissing(f"no lift chosen for {u!r} at {a!r}", witness=(a, u))
    for (a, u), w in lifts.items():
        if a not in obj_map or u not in base.src or base.src[u] != obj_map[a]:
            raise NotApplicable("lift entry for a pair that is not applicable", witness=(a, u))
        if w not in source.src or source.src[w] != a:
            raise LawViolation("chosen lift does not start at the given object", axiom="source", witness=(a, u, w))


def lifting_laws(
    source: FinCategory,
    base: FinCategory,
    obj_map: dict[str, str],
    lifts: LiftTable,
    first_axiom: LawCheck,
) -> list[LawCheck]:
    """Axioms (2) and (3), plus a caller-supplied axiom (1) check.

    Axiom (1) is the only one where cofunctors and delta lenses differ.
    """
    unit = LawCheck("axiom 2: lifts of identities are identities")
    for a in source.objects:
        unit.record(lifts[a, base.identity[obj_map[a]]] == source.identity[a], (a,))
    mult = LawCheck("axiom 3: lifts respect composition")
    if first_axiom.ok:
        for a in source.objects:
            for u in base.out(obj_map[a]):
                w = lifts[a, u]
                a2 = source.tgt[w]
                for v in base.out(base.tgt[u]):
                    lhs = lifts[a, base.comp[v, u]]
                    rhs = source.comp[lifts[a2, v], w]
                    mult.record(lhs == rhs, (a, u, v))
    return [first_axiom, unit, mult]


def cofunctor_laws(phi: Cofunctor) -> list[LawCheck]:
    A, B = phi.source, phi.base
    targets = LawCheck("axiom 1: lifts land over the target")
    for (a, u), w in phi.lifts.items():
        targets.record(phi.obj_map[A.tgt[w]] == B.tgt[u], (a, u))
    return lifting_laws(A, B, phi.obj_map, phi.lifts, targets)


def _raise_law(failed: LawCheck) -> None:
    axiom = int(failed.law.split(":")[0].split()[-1])
    raise LawViolation(f"{failed.law} fails", axiom=axiom, witness=failed.witnesses[0])


def validate_cofunctor(phi: Cofunctor) -> Cofunctor:
    check_lift_table(phi.source, phi.base, phi.obj_map, phi.lifts)
    failed = first_failure(cofunctor_laws(phi))
    if failed is not None:
        _raise_law(failed)
    return phi


def is_cofunctor(phi: Cofunctor) -> bool:
    try:
        validate_cofunctor(phi)
    except (LawViolation, LiftMissing, NotApplicable, ObjectMapMismatch):
        return False
    return True


def lift(phi: Cofunctor, a: str, u: str) -> str:
    try:
        return phi.lifts[a, u]
    except KeyError:
        raise NotApplicable(f"{u!r} does not start at the image of {a!r}", witness=(a, u)) from None


def identity_cofunctor(B: FinCategory) -> Cofunctor:
    """The trivial cofunctor on B: every morphism lifts to itself."""
    return make_cofunctor(B, B, {b: b for b in B.objects}, {(B.src[u], u): u for u in B.morphisms})


# -------------------------------------------------------------------- spans


@dataclass(frozen=True)
class CofSpan:
    apex: FinCategory
    left: Functor
    right: Functor


def to_span(phi: Cofunctor) -> CofSpan:
    """Span presentation. Apex morphisms are named ``"(a,u)"`` after the lift-table row."""
    A, B = phi.source, phi.base
    rows = {pair(a, u): (a, u) for (a, u) in phi.lifts}
    src = {m: a for m, (a, _) in rows.items()}
    tgt = {m: A.tgt[phi.lifts[a, u]] for m, (a, u) in rows.items()}
    identity = {a: pair(a, B.identity[phi.obj_map[a]]) for a in A.objects}
    comp = {}
    for m, (a, u) in rows.items():
        a2 = tgt[m]
        for v in B.out(B.tgt[u]):
            comp[pair(a2, v), m] = pair(a, B.comp[v, u])
    X = category_from_parts(A.objects, src, tgt, identity, comp)
    left = make_functor(X, A, {a: a for a in A.objects}, {m: phi.lifts[r] for m, r in rows.items()})
    right = make_functor(X, B, dict(phi.obj_map), {m: u for m, (_, u) in rows.items()})
    return CofSpan(X, left, right)


def from_span(s: CofSpan) -> Cofunctor:
    if not is_bijective_on_objects(s.left):
        raise NotBOO("left leg is not bijective on objects")
    bad = dopf_witness(s.right)
    if bad is not None:
        raise NotDopf("right leg is not a discrete opfibration", witness=bad)
    X = s.apex
    back = {a: x for x, a in s.left.obj_map.items()}
    obj_map = {a: s.right.obj_map[x] for a, x in back.items()}
    lifts = {}
    for a, x in back.items():
        for w in X.out(x):
            lifts[a, s.right.mor_map[w]] = s.left.mor_map[w]
    return make_cofunctor(s.left.target, s.right.target, obj_map, lifts)


# ----------------------------------------------------------------- Cof(B)


@dataclass(frozen=True)
class CofMorphism:
    source: Cofunctor
    target: Cofunctor
    carrier: Functor

    @cached_property
    def induced_apex(self) -> Functor:
        """The functor between span apexes, determined by the carrier."""
        X, Y = to_span(self.source).apex, to_span(self.target).apex
        h = self.carrier
        return make_functor(
            X,
            Y,
            {a: h.obj_map[a] for a in X.objects},
            {pair(a, u): pair(h.obj_map[a], u) for (a, u) in self.source.lifts},
        )


def cof_morphism_conditions(h: Functor, phi: Cofunctor, gamma: Cofunctor) -> list[LawCheck]:
    objs = LawCheck("object maps commute")
    for a in phi.source.objects:
        objs.record(gamma.obj_map.get(h.obj_map[a]) == phi.obj_map[a], (a,))
    lifts = LawCheck("chosen lifts preserved")
    if objs.ok:
        for (a, u), w in phi.lifts.items():
            lifts.record(h.mor_map[w] == gamma.lifts.get((h.obj_map[a], u)), (a, u))
    return [objs, lifts]


def validate_cof_morphism(h: Functor, phi: Cofunctor, gamma: Cofunctor) -> CofMorphism:
    """Check that h: A -> C is a morphism phi -> gamma in Cof(B).

    Both cofunctors are validated too, so a pass certifies the whole diagram.
    """
    if phi.base != gamma.base:
        raise BoundaryMismatch("cofunctors live over different bases")
    if h.source != phi.source or h.target != gamma.source:
        raise BoundaryMismatch("carrier does not run between the source categories")
    validate_functor(h)
    validate_cofunctor(phi)
    validate_cofunctor(gamma)
    objs, lifts = cof_morphism_conditions(h, phi, gamma)
    if not objs.ok:
        raise ObjectMapMismatch("carrier does not commute with the object maps", witness=objs.witnesses[0])
    if not lifts.ok:
        raise LiftNotPreserved("carrier does not preserve a chosen lift", witness=lifts.witnesses[0])
    m = CofMorphism(phi, gamma, h)
    # the induced apex functor must make both squares of the span diagram commute
    hbar = validate_functor(m.induced_apex)
    sphi, sgamma = to_span(phi), to_span(gamma)
    assert compose_functors(sgamma.left, hbar) == compose_functors(h, sphi.left)
    assert compose_functors(sgamma.right, hbar) == sphi.right
    return m


def is_cof_morphism(h: Functor, phi: Cofunctor, gamma: Cofunctor) -> bool:
    try:
        validate_cof_morphism(h, phi, gamma)
    except DeltaCatError:
        return False
    return True


def identity_cof_morphism(phi: Cofunctor) -> CofMorphism:
    return CofMorphism(phi, phi, identity_functor(phi.source))


def compose_cof_morphisms(n: CofMorphism, m: CofMorphism) -> CofMorphism:
    """n after m."""
    if m.target != n.source:
        raise BoundaryMismatch("morphisms are not composable in Cof(B)")
    return CofMorphism(m.source, n.target, compose_functors(n.carrier, m.carrier))


def coproduct_cof(phi: Cofunctor, gamma: Cofunctor) -> tuple[Cofunctor, CofMorphism, CofMorphism]:
    if phi.base != gamma.base:
        raise BoundaryMismatch("coproduct needs a shared base")
    S, inl, inr = coproduct_cat(phi.source, gamma.source)
    obj_map = {"inl." + a: b for a, b in phi.obj_map.items()} | {"inr." + a: b for a, b in gamma.obj_map.items()}
    lifts = {("inl." + a, u): "inl." + w for (a, u), w in phi.lifts.items()}
    lifts |= {("inr." + a, u): "inr." + w for (a, u), w in gamma.lifts.items()}
    total = make_cofunctor(S, phi.base, obj_map, lifts)
    return total, CofMorphism(phi, total, inl), CofMorphism(gamma, total, inr)


def copair_cof(m: CofMorphism, n: CofMorphism) -> CofMorphism:
    """Mediating morphism out of ``coproduct_cof(m.source, n.source)`` for the cocone (m, n)."""
    if m.target != n.target:
        raise BoundaryMismatch("cocone legs have different targets")
    total, _, _ = coproduct_cof(m.source, n.source)
    return CofMorphism(total, m.target, copair_functors(m.carrier, n.carrier))
