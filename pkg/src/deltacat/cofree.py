"""Cofree delta lenses and the comonad LR on Cof(B).

For a cofunctor phi: A -/-> B the cofree lens R(phi) lives on the category P
whose objects are those of A and whose morphisms a -> a' are pairs
``(w,u)`` of w: a -> a' in A and u: phi0(a) -> phi0(a') in B. The Get projects
to ``u``; the Put sends (a, u) to ``(phi(a,u),u)``.

Everything here is built from carriers alone and compared strictly, so the
adjunction and comonad laws reduce to equalities of finite tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from deltacat.cofunctor import (
    CofMorphism,
    Cofunctor,
    compose_cof_morphisms,
    to_span,
    validate_cof_morphism,
)
from deltacat.errors import (
    ComultLawViolation,
    CounitLawViolation,
    LiftNotPreserved,
    MalformedCategory,
    TriangleViolation,
)
from deltacat.fincat import (
    FinCategory,
    Functor,
    category_from_parts,
    codiscrete_map,
    codiscrete_unit,
    compose_functors,
    identity_functor,
    make_functor,
    pair,
    pullback,
    rename,
)
from deltacat.laws import LawCheck
from deltacat.lens import (
    DeltaLens,
    LensMorphism,
    forget_morphism,
    make_lens,
    underlying_cofunctor,
)


@dataclass(frozen=True)
class CofreeLens:
    base_cofunctor: Cofunctor
    apex: FinCategory
    lens: DeltaLens
    proj_A: Functor

    @property
    def comparison(self) -> Functor:
        """The bijective-on-objects functor X -> P out of the span apex of phi."""
        phi = self.base_cofunctor
        X = to_span(phi).apex
        return make_functor(
            X,
            self.apex,
            {a: a for a in X.objects},
            {pair(a, u): pair(w, u) for (a, u), w in phi.lifts.items()},
        )


def pair_category(phi: Cofunctor) -> FinCategory:
    """P built directly from its description as a category of pairs."""
    A, B, f0 = phi.source, phi.base, phi.obj_map
    src, tgt = {}, {}
    for w in A.morphisms:
        for u in B.hom(f0[A.src[w]], f0[A.tgt[w]]):
            m = pair(w, u)
            if m in src:
                raise MalformedCategory("pair names collide; identifiers must not contain unbalanced parentheses", witness=m)
            src[m], tgt[m] = A.src[w], A.tgt[w]
    identity = {a: pair(A.identity[a], B.identity[f0[a]]) for a in A.objects}
    comp = {}
    for w1 in A.morphisms:
        for u1 in B.hom(f0[A.src[w1]], f0[A.tgt[w1]]):
            for w2 in A.out(A.tgt[w1]):
                for u2 in B.hom(f0[A.src[w2]], f0[A.tgt[w2]]):
                    comp[pair(w2, u2), pair(w1, u1)] = pair(A.comp[w2, w1], B.comp[u2, u1])
    return category_from_parts(A.objects, src, tgt, identity, comp)


def pair_category_via_pullback(phi: Cofunctor) -> FinCategory:
    """P as the pullback of A -> codisc(B0) <- B, objects renamed (a,phi0 a) -> a."""
    A, B = phi.source, phi.base
    A_hat, eta_A = codiscrete_unit(A)
    B_hat, eta_B = codiscrete_unit(B)
    left = compose_functors(codiscrete_map(phi.obj_map, A_hat, B_hat), eta_A)
    P, _, _ = pullback(left, eta_B)
    objs = {pair(a, phi.obj_map[a]): a for a in A.objects}
    return rename(P, objs, {m: m for m in P.morphisms})


def cofree_lens(phi: Cofunctor) -> CofreeLens:
    A, B = phi.source, phi.base
    P = pair_category(phi)
    first, second = {}, {}
    for w in A.morphisms:
        for u in B.hom(phi.obj_map[A.src[w]], phi.obj_map[A.tgt[w]]):
            first[pair(w, u)], second[pair(w, u)] = w, u
    proj_A = make_functor(P, A, {a: a for a in A.objects}, first)
    get = make_functor(P, B, dict(phi.obj_map), second)
    puts = {(a, u): pair(w, u) for (a, u), w in phi.lifts.items()}
    return CofreeLens(phi, P, make_lens(get, puts), proj_A)


def components(c: CofreeLens, m: str) -> tuple[str, str]:
    """The (w, u) pair behind a morphism of P."""
    return c.proj_A.mor_map[m], c.lens.get.mor_map[m]


def lr(phi: Cofunctor) -> Cofunctor:
    """The comonad LR on objects."""
    return underlying_cofunctor(cofree_lens(phi).lens)


# ----------------------------------------------------------- the adjunction


def r_on_morphism(m: CofMorphism) -> LensMorphism:
    """R on morphisms: (w,u) goes to (h w, u)."""
    src, dst = cofree_lens(m.source), cofree_lens(m.target)
    h = m.carrier
    mor_map = {}
    for p in src.apex.morphisms:
        w, u = components(src, p)
        mor_map[p] = pair(h.mor_map[w], u)
    carrier = make_functor(src.apex, dst.apex, dict(h.obj_map), mor_map)
    return LensMorphism(src.lens, dst.lens, carrier)


def lr_on_morphism(m: CofMorphism) -> CofMorphism:
    return forget_morphism(r_on_morphism(m))


def counit(phi: Cofunctor) -> CofMorphism:
    """Counit component LR(phi) -> phi; its carrier is the projection onto A."""
    c = cofree_lens(phi)
    return CofMorphism(underlying_cofunctor(c.lens), phi, c.proj_A)


def unit(lens: DeltaLens) -> LensMorphism:
    """Unit component lens -> R(L(lens)), with carrier <1_A, f>: w goes to (w, f w)."""
    c = cofree_lens(underlying_cofunctor(lens))
    f = lens.get
    carrier = make_functor(
        lens.source,
        c.apex,
        {a: a for a in lens.source.objects},
        {w: pair(w, f.mor_map[w]) for w in lens.source.morphisms},
    )
    return LensMorphism(lens, c.lens, carrier)


def _equation(law: str, F: Functor, G: Functor) -> LawCheck:
    """Strict equality of two parallel functors, one tuple per object and morphism."""
    check = LawCheck(law)
    for a in F.source.objects:
        check.record(F.obj_map[a] == G.obj_map.get(a), ("object", a, F.obj_map[a], G.obj_map.get(a)))
    for w in F.source.morphisms:
        check.record(F.mor_map[w] == G.mor_map.get(w), ("morphism", w, F.mor_map[w], G.mor_map.get(w)))
    if check.ok and F.target != G.target:
        check.record(False, ("target", None, None, None))
    return check


def _compose_partial(G: Functor, F: Functor) -> Functor:
    """G after F, leaving None wherever F lands outside the source of G."""
    return Functor(
        F.source,
        G.target,
        {a: G.obj_map.get(b) for a, b in F.obj_map.items()},
        {w: G.mor_map.get(v) for w, v in F.mor_map.items()},
    )


def triangle_laws(
    phi: Cofunctor, lens: DeltaLens, unit_fn: Callable[[DeltaLens], LensMorphism] = unit
) -> list[LawCheck]:
    """Both triangle identities of L -| R, at L(lens) and at R(phi)."""
    left = _compose_partial(counit(underlying_cofunctor(lens)).carrier, unit_fn(lens).carrier)
    first = _equation("triangle at L: counit_L . L(unit) = 1", left, identity_functor(lens.source))
    c = cofree_lens(phi)
    right = _compose_partial(r_on_morphism(counit(phi)).carrier, unit_fn(c.lens).carrier)
    second = _equation("triangle at R: R(counit) . unit_R = 1", right, identity_functor(c.apex))
    return [first, second]


def check_triangle_identities(
    phi: Cofunctor, lens: DeltaLens, unit_fn: Callable[[DeltaLens], LensMorphism] = unit
) -> list[LawCheck]:
    checks = triangle_laws(phi, lens, unit_fn)
    for which, check in zip(("L", "R"), checks):
        if not check.ok:
            raise TriangleViolation(f"{check.law} fails", which=which, witness=check.witnesses[0])
    return checks


# --------------------------------------------------------------- the comonad


def comultiplication(phi: Cofunctor) -> CofMorphism:
    """LR(phi) -> LRLR(phi), the unit at R(phi) with its Get forgotten: (w,u) goes to ((w,u),u)."""
    return forget_morphism(unit(cofree_lens(phi).lens))


def comonad_laws(phi: Cofunctor) -> list[LawCheck]:
    delta = comultiplication(phi)
    ident = identity_functor(cofree_lens(phi).apex)
    eps_lr = compose_cof_morphisms(counit(lr(phi)), delta)
    lr_eps = compose_cof_morphisms(lr_on_morphism(counit(phi)), delta)
    lhs = compose_cof_morphisms(lr_on_morphism(delta), delta)
    rhs = compose_cof_morphisms(comultiplication(lr(phi)), delta)
    return [
        _equation("counitality: counit_LR . delta = 1", eps_lr.carrier, ident),
        _equation("counitality: LR(counit) . delta = 1", lr_eps.carrier, ident),
        _equation("coassociativity: LR(delta) . delta = delta_LR . delta", lhs.carrier, rhs.carrier),
    ]


# -------------------------------------------------------------- coalgebras


@dataclass(frozen=True)
class Coalgebra:
    carrier: Cofunctor
    structure: CofMorphism

    @property
    def get(self) -> Functor:
        """The functor f with structure = <1_A, f>."""
        return compose_functors(cofree_lens(self.carrier).lens.get, self.structure.carrier)

    @property
    def has_forced_shape(self) -> bool:
        """Identity on objects and first-component preserving on morphisms."""
        h = self.structure.carrier
        c = cofree_lens(self.carrier)
        return all(h.obj_map[a] == a for a in h.source.objects) and all(
            components(c, h.mor_map[w])[0] == w for w in h.source.morphisms
        )


def coalgebra_laws(phi: Cofunctor, h: CofMorphism) -> list[LawCheck]:
    counit_law = _equation(
        "counit: counit . h = 1",
        compose_cof_morphisms(counit(phi), h).carrier,
        identity_functor(phi.source),
    )
    comult_law = _equation(
        "comultiplication: LR(h) . h = delta . h",
        compose_cof_morphisms(lr_on_morphism(h), h).carrier,
        compose_cof_morphisms(comultiplication(phi), h).carrier,
    )
    return [counit_law, comult_law]


def validate_coalgebra(phi: Cofunctor, h: CofMorphism) -> Coalgebra:
    """Both coalgebra laws are checked; neither is inferred from the other."""
    validate_cof_morphism(h.carrier, phi, lr(phi))
    counit_law, comult_law = coalgebra_laws(phi, h)
    if not counit_law.ok:
        raise CounitLawViolation(f"{counit_law.law} fails", witness=counit_law.witnesses[0])
    if not comult_law.ok:
        raise ComultLawViolation(f"{comult_law.law} fails", witness=comult_law.witnesses[0])
    return Coalgebra(phi, h)


def coalgebra_to_lens(c: Coalgebra) -> DeltaLens:
    return make_lens(c.get, dict(c.carrier.lifts))


def lens_to_coalgebra(lens: DeltaLens) -> Coalgebra:
    phi = underlying_cofunctor(lens)
    return Coalgebra(phi, forget_morphism(unit(lens)))


# ---------------------------------------------------------- factorisation


def factorize(lens: DeltaLens) -> tuple[LensMorphism, CofreeLens]:
    """Split a lens into the bijective-on-objects carrier <1_A, f> and a cofree lens."""
    return unit(lens), cofree_lens(underlying_cofunctor(lens))


def reassemble(first: LensMorphism, second: CofreeLens) -> DeltaLens:
    """Recover a lens from its factorisation: Get by composition, Put by pulling back along the carrier."""
    h = first.carrier
    get = compose_functors(second.lens.get, h)
    preimage = {v: w for w, v in h.mor_map.items()}
    puts = {}
    for (a, u), p in second.lens.puts.items():
        if p not in preimage:
            raise LiftNotPreserved("cofree put is not in the image of the carrier", witness=(a, u, p))
        puts[a, u] = preimage[p]
    return make_lens(get, puts)
