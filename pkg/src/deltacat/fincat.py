"""Finite categories, functors between them, and the handful of constructions
(codiscrete categories, pullbacks, binary coproducts) the lens machinery needs.

A category is stored as plain tables keyed by identifier strings. Composition
``comp[(g, f)]`` is "g after f". Constructed categories get canonical names:
pairs are ``"(x,y)"``, coproduct copies are prefixed ``"inl."``/``"inr."``
and codiscrete morphisms are ``"a~>b"``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from deltacat.errors import (
    BoundaryMismatch,
    MalformedCategory,
    NotComposable,
    NotAFunctor,
    UnknownMorphism,
)
from deltacat.laws import LawCheck, first_failure

ID_PREFIX = "id_"


def pair(x: str, y: str) -> str:
    return f"({x},{y})"


def default_identity(obj: str) -> str:
    return ID_PREFIX + obj


@dataclass(frozen=True)
class FinCategory:
    objects: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    identity: dict[str, str]
    comp: dict[tuple[str, str], str]

    @cached_property
    def morphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self.src))

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for w in self.morphisms:
            homs[self.src[w], self.tgt[w]].append(w)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for w in self.morphisms:
            out[self.src[w]].append(w)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def identities(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs[a, b]

    def out(self, a: str) -> tuple[str, ...]:
        """Morphisms with source ``a``."""
        return self._out[a]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        """All (f, g) with g after f defined, in lexicographic order."""
        for f in self.morphisms:
            for g in self.out(self.tgt[f]):
                yield f, g

    def is_identity(self, w: str) -> bool:
        return w in self.identities

    def __repr__(self) -> str:
        return f"FinCategory(objects={len(self.objects)}, morphisms={len(self.src)})"


def compose(C: FinCategory, g: str, f: str) -> str:
    """Return g after f."""
    for w in (g, f):
        if w not in C.src:
            raise UnknownMorphism(f"unknown morphism {w!r}", witness=w)
    if C.src[g] != C.tgt[f]:
        raise NotComposable(
            f"source of {g!r} is {C.src[g]!r} but target of {f!r} is {C.tgt[f]!r}",
            witness=(f, g),
        )
    return C.comp[g, f]


def validate_category(raw: Mapping[str, Any]) -> FinCategory:
    """Build a FinCategory from a raw description, checking every law.

    ``raw`` has ``objects``, ``morphisms`` (dicts with name/src/tgt) and
    ``compose`` triples ``[f, g, gf]`` in application order. Identities not
    listed under the optional ``identities`` key are synthesized as
    ``id_<object>``; composites with an identity are filled in.
    """
    objects = list(raw.get("objects", []))
    for a in objects:
        if not isinstance(a, str) or not a:
            raise MalformedCategory("object names must be non-empty strings", witness=a)
    if len(set(objects)) != len(objects):
        dup = next(a for a in objects if objects.count(a) > 1)
        raise MalformedCategory(f"duplicate object {dup!r}", witness=dup)
    objset = set(objects)

    declared_ids = dict(raw.get("identities") or {})
    for a in declared_ids:
        if a not in objset:
            raise MalformedCategory(f"identity declared for unknown object {a!r}", witness=a)

    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    explicit_ids = set(declared_ids.values())
    for entry in raw.get("morphisms", []):
        try:
            name, s, t = entry["name"], entry["src"], entry["tgt"]
        except (KeyError, TypeError):
            raise MalformedCategory("morphism entries need name, src and tgt", witness=entry)
        if not isinstance(name, str) or not name:
            raise MalformedCategory("morphism names must be non-empty strings", witness=entry)
        if name in src:
            raise MalformedCategory(f"duplicate morphism {name!r}", witness=name)
        if name.startswith(ID_PREFIX) and name not in explicit_ids:
            raise MalformedCategory(f"prefix {ID_PREFIX!r} is reserved for identities", witness=name)
        for end in (s, t):
            if end not in objset:
                raise MalformedCategory(f"morphism {name!r} has dangling end {end!r}", witness=(name, s, t))
        src[name], tgt[name] = s, t

    identity: dict[str, str] = {}
    for a in objects:
        i = declared_ids.get(a)
        if i is None:
            i = default_identity(a)
            if i in src:
                raise MalformedCategory(f"identity name {i!r} already in use", witness=i)
            src[i] = tgt[i] = a
        elif i not in src or src[i] != a or tgt[i] != a:
            raise MalformedCategory(f"declared identity {i!r} is not an endomorphism of {a!r}", witness=(a, i))
        identity[a] = i
    if len(set(identity.values())) != len(identity):
        raise MalformedCategory("two objects share an identity", witness=identity)

    comp: dict[tuple[str, str], str] = {}
    for entry in raw.get("compose", []):
        try:
            f, g, gf = entry
        except (TypeError, ValueError):
            raise MalformedCategory("compose entries are triples [f, g, gf]", witness=entry)
        for w in (f, g, gf):
            if w not in src:
                raise MalformedCategory(f"compose entry names unknown morphism {w!r}", witness=(f, g, gf))
        if src[g] != tgt[f]:
            raise MalformedCategory("compose entry for non-composable pair", witness=(f, g, gf))
        if src[gf] != src[f] or tgt[gf] != tgt[g]:
            raise MalformedCategory("composite has the wrong boundary", witness=(f, g, gf))
        if (g, f) in comp and comp[g, f] != gf:
            raise MalformedCategory("conflicting compose entries", witness=(f, g, gf))
        comp[g, f] = gf

    # unit laws fill (and constrain) every composite with an identity
    for w in src:
        for key, expected in (((identity[tgt[w]], w), w), ((w, identity[src[w]]), w)):
            if comp.setdefault(key, expected) != expected:
                raise MalformedCategory("unit law violated", witness=(key[1], key[0], comp[key]))

    C = FinCategory(
        objects=tuple(sorted(objects)),
        src=dict(sorted(src.items())),
        tgt=dict(sorted(tgt.items())),
        identity=dict(sorted(identity.items())),
        comp=dict(sorted(comp.items())),
    )
    for f, g in C.composable_pairs():
        if (g, f) not in comp:
            raise MalformedCategory("missing composite", witness=(f, g))
    failed = first_failure(category_laws(C))
    if failed is not None:
        raise MalformedCategory(f"{failed.law} violated", witness=failed.witnesses[0])
    return C


def category_laws(C: FinCategory) -> list[LawCheck]:
    """Unit and associativity laws, checked on every applicable tuple."""
    units = LawCheck("unit laws")
    for w in C.morphisms:
        left = C.comp.get((C.identity[C.tgt[w]], w))
        right = C.comp.get((w, C.identity[C.src[w]]))
        units.record(left == w and right == w, (w,))
    assoc = LawCheck("associativity")
    for f, g in C.composable_pairs():
        gf = C.comp[g, f]
        for h in C.out(C.tgt[g]):
            assoc.record(C.comp[h, gf] == C.comp[C.comp[h, g], f], (f, g, h))
    return [units, assoc]


def category_from_parts(
    objects: Iterable[str],
    src: Mapping[str, str],
    tgt: Mapping[str, str],
    identity: Mapping[str, str],
    comp: Mapping[tuple[str, str], str],
) -> FinCategory:
    """Assemble a constructed category; canonicalizes ordering, no checks."""
    return FinCategory(
        objects=tuple(sorted(objects)),
        src=dict(sorted(src.items())),
        tgt=dict(sorted(tgt.items())),
        identity=dict(sorted(identity.items())),
        comp=dict(sorted(comp.items())),
    )


def rename(C: FinCategory, objects: Mapping[str, str], morphisms: Mapping[str, str]) -> FinCategory:
    """Transport C along injective renamings of its objects and morphisms."""
    return category_from_parts(
        (objects[a] for a in C.objects),
        {morphisms[w]: objects[a] for w, a in C.src.items()},
        {morphisms[w]: objects[a] for w, a in C.tgt.items()},
        {objects[a]: morphisms[i] for a, i in C.identity.items()},
        {(morphisms[g], morphisms[f]): morphisms[gf] for (g, f), gf in C.comp.items()},
    )


# ---------------------------------------------------------------- functors


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def __call__(self, w: str) -> str:
        """Image of a morphism."""
        try:
            return self.mor_map[w]
        except KeyError:
            raise UnknownMorphism(f"{w!r} is not a morphism of the source", witness=w) from None

    def __repr__(self) -> str:
        return f"Functor({self.source!r} -> {self.target!r})"


def make_functor(source: FinCategory, target: FinCategory, obj_map: Mapping[str, str], mor_map: Mapping[str, str]) -> Functor:
    return Functor(source, target, dict(sorted(obj_map.items())), dict(sorted(mor_map.items())))


def functor_laws(F: Functor) -> list[LawCheck]:
    """Functoriality equations. Assumes both maps are total and well-typed."""
    A, B = F.source, F.target
    ends = LawCheck("preserves source and target")
    for w in A.morphisms:
        v = F.mor_map[w]
        ends.record(B.src[v] == F.obj_map[A.src[w]] and B.tgt[v] == F.obj_map[A.tgt[w]], (w,))
    ids = LawCheck("preserves identities")
    for a in A.objects:
        ids.record(F.mor_map[A.identity[a]] == B.identity[F.obj_map[a]], (a,))
    comps = LawCheck("preserves composition")
    if ends.ok:
        for f, g in A.composable_pairs():
            comps.record(F.mor_map[A.comp[g, f]] == B.comp[F.mor_map[g], F.mor_map[f]], (f, g))
    return [ends, ids, comps]


def check_functor_shape(F: Functor) -> None:
    A, B = F.source, F.target
    if set(F.obj_map) != set(A.objects):
        raise NotAFunctor("object map is not total on the source", witness=sorted(set(A.objects) ^ set(F.obj_map)))
    if set(F.mor_map) != set(A.src):
        raise NotAFunctor("morphism map is not total on the source", witness=sorted(set(A.src) ^ set(F.mor_map)))
    for a, b in F.obj_map.items():
        if b not in B.identity:
            raise NotAFunctor(f"object {a!r} maps outside the target", witness=(a, b))
    for w, v in F.mor_map.items():
        if v not in B.src:
            raise NotAFunctor(f"morphism {w!r} maps outside the target", witness=(w, v))


def validate_functor(F: Functor) -> Functor:
    check_functor_shape(F)
    failed = first_failure(functor_laws(F))
    if failed is not None:
        raise NotAFunctor(f"functor {failed.law} fails", witness=failed.witnesses[0])
    return F


def is_functor(F: Functor) -> bool:
    try:
        validate_functor(F)
    except NotAFunctor:
        return False
    return True


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {w: w for w in C.morphisms})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    if F.target != G.source:
        raise BoundaryMismatch("target of the first functor is not the source of the second")
    return Functor(
        F.source,
        G.target,
        {a: G.obj_map[b] for a, b in F.obj_map.items()},
        {w: G.mor_map[v] for w, v in F.mor_map.items()},
    )


def is_bijective_on_objects(F: Functor) -> bool:
    image = set(F.obj_map.values())
    return len(image) == len(F.obj_map) and image == set(F.target.objects)


def is_discrete_opfibration(F: Functor) -> bool:
    return dopf_witness(F) is None


def dopf_witness(F: Functor) -> tuple[str, str] | None:
    """First pair (a, u) whose lift is missing or not unique, else None."""
    A, B = F.source, F.target
    for a in A.objects:
        for u in B.out(F.obj_map[a]):
            lifts = [w for w in A.out(a) if F.mor_map[w] == u]
            if len(lifts) != 1:
                return a, u
    return None


def is_isomorphism(F: Functor) -> bool:
    return is_bijective_on_objects(F) and len(set(F.mor_map.values())) == len(F.mor_map) == len(F.target.src)


# ------------------------------------------------------------ constructions


def codiscrete(objects: Iterable[str]) -> FinCategory:
    """The category with exactly one morphism ``a~>b`` for each ordered pair."""
    objs = sorted(objects)
    name = {(a, b): f"{a}~>{b}" for a in objs for b in objs}
    return category_from_parts(
        objs,
        {m: a for (a, _), m in name.items()},
        {m: b for (_, b), m in name.items()},
        {a: name[a, a] for a in objs},
        {(name[b, c], name[a, b]): name[a, c] for a in objs for b in objs for c in objs},
    )


def codiscrete_map(obj_map: Mapping[str, str], source: FinCategory, target: FinCategory) -> Functor:
    """The functor between codiscrete categories induced by a function on objects."""
    mor_map = {}
    for w in source.morphisms:
        mor_map[w] = target.hom(obj_map[source.src[w]], obj_map[source.tgt[w]])[0]
    return make_functor(source, target, obj_map, mor_map)


def codiscrete_unit(C: FinCategory) -> tuple[FinCategory, Functor]:
    """Codiscrete category on the objects of C, with the collapsing functor."""
    D = codiscrete(C.objects)
    eta = make_functor(
        C, D, {a: a for a in C.objects}, {w: D.hom(C.src[w], C.tgt[w])[0] for w in C.morphisms}
    )
    return D, eta


def pullback(F: Functor, G: Functor) -> tuple[FinCategory, Functor, Functor]:
    """Pullback of A -F-> C <-G- B, with componentwise pair names."""
    if F.target != G.target:
        raise BoundaryMismatch("cospan legs have different targets")
    A, B = F.source, G.source
    objs = {pair(a, b): (a, b) for a in A.objects for b in B.objects if F.obj_map[a] == G.obj_map[b]}
    mors = {
        pair(w, u): (w, u)
        for w in A.morphisms
        for u in B.morphisms
        if F.mor_map[w] == G.mor_map[u]
    }
    src = {m: pair(A.src[w], B.src[u]) for m, (w, u) in mors.items()}
    tgt = {m: pair(A.tgt[w], B.tgt[u]) for m, (w, u) in mors.items()}
    identity = {p: pair(A.identity[a], B.identity[b]) for p, (a, b) in objs.items()}
    comp = {}
    for m1, (w1, u1) in mors.items():
        for m2, (w2, u2) in mors.items():
            if src[m2] == tgt[m1]:
                comp[m2, m1] = pair(A.comp[w2, w1], B.comp[u2, u1])
    P = category_from_parts(objs, src, tgt, identity, comp)
    pi_A = make_functor(P, A, {p: a for p, (a, _) in objs.items()}, {m: w for m, (w, _) in mors.items()})
    pi_B = make_functor(P, B, {p: b for p, (_, b) in objs.items()}, {m: u for m, (_, u) in mors.items()})
    return P, pi_A, pi_B


def pullback_mediator(F: Functor, G: Functor, p: Functor, q: Functor) -> Functor:
    """The unique functor into the pullback of (F, G) induced by a cone (p, q)."""
    if p.source != q.source:
        raise BoundaryMismatch("cone legs have different sources")
    if compose_functors(F, p) != compose_functors(G, q):
        raise BoundaryMismatch("cone does not commute over the cospan")
    P, _, _ = pullback(F, G)
    return make_functor(
        p.source,
        P,
        {x: pair(p.obj_map[x], q.obj_map[x]) for x in p.source.objects},
        {w: pair(p.mor_map[w], q.mor_map[w]) for w in p.source.morphisms},
    )


def _prefixed(prefix: str, C: FinCategory) -> tuple[dict[str, str], dict[str, str]]:
    return {a: prefix + a for a in C.objects}, {w: prefix + w for w in C.morphisms}


def coproduct_cat(A: FinCategory, C: FinCategory) -> tuple[FinCategory, Functor, Functor]:
    """Disjoint union A + C with its two injections."""
    lo, lm = _prefixed("inl.", A)
    ro, rm = _prefixed("inr.", C)
    left, right = rename(A, lo, lm), rename(C, ro, rm)
    S = category_from_parts(
        left.objects + right.objects,
        {**left.src, **right.src},
        {**left.tgt, **right.tgt},
        {**left.identity, **right.identity},
        {**left.comp, **right.comp},
    )
    return S, make_functor(A, S, lo, lm), make_functor(C, S, ro, rm)


def copair_functors(h: Functor, k: Functor) -> Functor:
    """The functor A + C -> D out of the coproduct determined by h: A -> D and k: C -> D."""
    if h.target != k.target:
        raise BoundaryMismatch("copairing needs a common target")
    S, _, _ = coproduct_cat(h.source, k.source)
    obj_map = {"inl." + a: b for a, b in h.obj_map.items()} | {"inr." + a: b for a, b in k.obj_map.items()}
    mor_map = {"inl." + w: v for w, v in h.mor_map.items()} | {"inr." + w: v for w, v in k.mor_map.items()}
    return make_functor(S, h.target, obj_map, mor_map)
