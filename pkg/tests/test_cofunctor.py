from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltacat import oracle
from deltacat.cofunctor import (
    CofSpan,
    compose_cof_morphisms,
    copair_cof,
    coproduct_cof,
    from_span,
    identity_cof_morphism,
    identity_cofunctor,
    lift,
    make_cofunctor,
    to_span,
    validate_cof_morphism,
    validate_cofunctor,
)
from deltacat.errors import (
    LawViolation,
    LiftMissing,
    LiftNotPreserved,
    NotApplicable,
    NotBOO,
    NotDopf,
    ObjectMapMismatch,
)
from deltacat.fincat import (
    compose_functors,
    identity_functor,
    is_bijective_on_objects,
    is_discrete_opfibration,
    is_isomorphism,
    make_functor,
    validate_category,
    validate_functor,
)
from tests.strategies import poset_raw


def one_over_two(cats, at="1"):
    return make_cofunctor(cats["one"], cats["two"], {"*": at}, {("*", f"id_{at}"): "id_*"})


class TestValidate:
    def test_identity_on_two(self, cats):
        validate_cofunctor(identity_cofunctor(cats["two"]))

    def test_one_over_two_at_1(self, cats):
        validate_cofunctor(one_over_two(cats))

    def test_one_over_two_at_0_is_missing_a_lift(self, cats):
        with pytest.raises(LiftMissing) as info:
            validate_cofunctor(one_over_two(cats, at="0"))
        assert info.value.witness == ("*", "u")

    def test_one_over_two_at_0_no_choice_works(self, cats):
        # the only candidate for (*, u) is id_*, which lands over 0, not 1
        phi = make_cofunctor(cats["one"], cats["two"], {"*": "0"}, {("*", "id_0"): "id_*", ("*", "u"): "id_*"})
        with pytest.raises(LawViolation) as info:
            validate_cofunctor(phi)
        assert info.value.axiom == 1 and info.value.witness == ("*", "u")

    def test_axiom_2(self, cats):
        L = cats["loop"]
        phi = make_cofunctor(L, L, {"*": "*"}, {("*", "id_*"): "e", ("*", "e"): "e"})
        with pytest.raises(LawViolation) as info:
            validate_cofunctor(phi)
        assert info.value.axiom == 2

    def test_axiom_3(self, cats):
        C, L = cats["composable"], cats["loop"]
        lifts = {
            ("0", "id_*"): "id_0", ("0", "e"): "f",
            ("1", "id_*"): "id_1", ("1", "e"): "g",
            ("2", "id_*"): "id_2", ("2", "e"): "id_2",
        }
        phi = make_cofunctor(C, L, {"0": "*", "1": "*", "2": "*"}, lifts)
        with pytest.raises(LawViolation) as info:
            validate_cofunctor(phi)
        # lift of e.e = e at 0 is f, but lifting e twice gives g.f = gf
        assert info.value.axiom == 3 and info.value.witness == ("0", "e", "e")

    def test_extra_row(self, cats):
        phi = one_over_two(cats)
        bad = make_cofunctor(phi.source, phi.base, phi.obj_map, {**phi.lifts, ("*", "u"): "id_*"})
        with pytest.raises(NotApplicable):
            validate_cofunctor(bad)

    def test_all_enumerated_pass(self, all_cofunctors):
        for _, _, phi in all_cofunctors:
            validate_cofunctor(phi)


class TestLift:
    def test_identity(self, cats):
        assert lift(identity_cofunctor(cats["two"]), "0", "u") == "u"
        assert lift(identity_cofunctor(cats["loop"]), "*", "e") == "e"

    def test_identity_lifts_to_identity(self, all_cofunctors):
        for _, _, phi in all_cofunctors:
            for a in phi.source.objects:
                assert lift(phi, a, phi.base.identity[phi.obj_map[a]]) == phi.source.identity[a]

    def test_not_applicable(self, cats):
        with pytest.raises(NotApplicable):
            lift(one_over_two(cats), "*", "u")


class TestIdentityCofunctor:
    @pytest.mark.parametrize("name, rows", [("one", 1), ("two", 3), ("loop", 2)])
    def test_rows(self, cats, name, rows):
        # one row per (object, outgoing morphism)
        B = cats[name]
        assert len(identity_cofunctor(B).lifts) == rows == sum(len(B.out(b)) for b in B.objects)


class TestSpan:
    def test_identity(self, cats):
        for B in cats.values():
            s = to_span(identity_cofunctor(B))
            assert is_isomorphism(s.left) and is_isomorphism(s.right)

    def test_one_over_two(self, cats):
        s = to_span(one_over_two(cats))
        assert (len(s.apex.objects), len(s.apex.morphisms)) == (1, 1)
        assert s.right.obj_map == {"*": "1"}

    def test_loop_apex(self, cats):
        s = to_span(identity_cofunctor(cats["loop"]))
        assert (len(s.apex.objects), len(s.apex.morphisms)) == (1, 2)

    def test_identity_span(self, cats):
        B = cats["two"]
        s = CofSpan(B, identity_functor(B), identity_functor(B))
        assert from_span(s) == identity_cofunctor(B)

    def test_not_boo(self, cats):
        two, one = cats["two"], cats["one"]
        left = make_functor(two, one, {"0": "*", "1": "*"}, {w: "id_*" for w in two.morphisms})
        with pytest.raises(NotBOO):
            from_span(CofSpan(two, left, identity_functor(two)))

    def test_not_dopf(self, cats):
        two, one = cats["two"], cats["one"]
        right = make_functor(two, one, {"0": "*", "1": "*"}, {w: "id_*" for w in two.morphisms})
        with pytest.raises(NotDopf):
            from_span(CofSpan(two, identity_functor(two), right))

    def test_round_trip(self, all_cofunctors):
        for _, _, phi in all_cofunctors:
            s = to_span(phi)
            validate_functor(s.left), validate_functor(s.right)
            assert is_bijective_on_objects(s.left) and is_discrete_opfibration(s.right)
            assert from_span(s) == phi

    def test_apex_counts(self, all_cofunctors):
        for _, _, phi in all_cofunctors:
            X = to_span(phi).apex
            A, B = phi.source, phi.base
            for a, a2 in itertools.product(A.objects, repeat=2):
                expected = sum(
                    1 for u in B.hom(phi.obj_map[a], phi.obj_map[a2]) if A.tgt[phi.lifts[a, u]] == a2
                )
                assert len(X.hom(a, a2)) == expected
            for a in A.objects:
                assert sum(len(X.hom(a, a2)) for a2 in A.objects) == len(B.out(phi.obj_map[a]))

    def test_span_round_trip_up_to_renaming(self, all_cofunctors):
        for _, _, phi in all_cofunctors[::5]:
            s = to_span(phi)
            s2 = to_span(from_span(s))
            # compare apexes through the legs: both are determined by (left object, right morphism)
            iso = make_functor(
                s.apex,
                s2.apex,
                dict(s.left.obj_map),
                {w: f"({s.left.obj_map[s.apex.src[w]]},{s.right(w)})" for w in s.apex.morphisms},
            )
            validate_functor(iso)
            assert is_isomorphism(iso)
            assert compose_functors(s2.left, iso) == s.left


class TestCofMorphisms:
    def test_identity(self, cats):
        phi = identity_cofunctor(cats["loop"])
        m = validate_cof_morphism(identity_functor(cats["loop"]), phi, phi)
        assert is_isomorphism(m.induced_apex)
        assert m.induced_apex.mor_map == {w: w for w in m.induced_apex.source.morphisms}

    def test_point_into_trivial(self, cats):
        one, two = cats["one"], cats["two"]
        h = make_functor(one, two, {"*": "1"}, {"id_*": "id_1"})
        validate_cof_morphism(h, one_over_two(cats), identity_cofunctor(two))

    def test_object_map_mismatch(self, cats):
        one, two = cats["one"], cats["two"]
        h = make_functor(one, two, {"*": "0"}, {"id_*": "id_0"})
        with pytest.raises(ObjectMapMismatch):
            validate_cof_morphism(h, one_over_two(cats), identity_cofunctor(two))

    def test_lift_not_preserved(self, cats):
        # parallel pair over Two, choosing s or t as the lift of u; the identity carrier relates neither
        C, two = cats["parallel"], cats["two"]
        rows = {("0", "id_0"): "id_0", ("1", "id_1"): "id_1"}
        s_first = make_cofunctor(C, two, {"0": "0", "1": "1"}, {**rows, ("0", "u"): "s"})
        t_first = make_cofunctor(C, two, {"0": "0", "1": "1"}, {**rows, ("0", "u"): "t"})
        validate_cof_morphism(identity_functor(C), s_first, s_first)
        with pytest.raises(LiftNotPreserved) as info:
            validate_cof_morphism(identity_functor(C), s_first, t_first)
        assert info.value.witness == ("0", "u")

    def test_closed_under_composition(self, cats):
        # Cof(B) is a category: carriers compose, identities are morphisms
        B = cats["two"]
        over = [phi for A in cats.values() for phi in oracle.enumerate_cofunctors(A, B)]
        homs = {
            (i, j): oracle.enumerate_cof_morphisms(over[i], over[j])
            for i in range(len(over))
            for j in range(len(over))
        }
        for i, phi in enumerate(over):
            assert identity_cof_morphism(phi) in homs[i, i]
        for (i, j), ms in homs.items():
            for k in range(len(over)):
                for m in ms:
                    for n in homs[j, k]:
                        nm = compose_cof_morphisms(n, m)
                        validate_cof_morphism(nm.carrier, over[i], over[k])


class TestCoproduct:
    def test_one_plus_one(self, cats):
        one = cats["one"]
        total, inl, inr = coproduct_cof(identity_cofunctor(one), identity_cofunctor(one))
        validate_cofunctor(total)
        assert (len(total.source.objects), len(total.source.morphisms)) == (2, 2)

    def test_two_plus_two(self, cats):
        phi = identity_cofunctor(cats["two"])
        total, inl, inr = coproduct_cof(phi, phi)
        validate_cofunctor(total)
        assert len(total.lifts) == 3 + 3
        validate_cof_morphism(inl.carrier, phi, total)
        validate_cof_morphism(inr.carrier, phi, total)

    def test_copair_is_unique_mediator(self, cats):
        B = cats["two"]
        phi, gamma = one_over_two(cats), identity_cofunctor(B)
        total, inl, inr = coproduct_cof(phi, gamma)
        for delta in [gamma] + oracle.enumerate_cofunctors(cats["parallel"], B):
            for m in oracle.enumerate_cof_morphisms(phi, delta):
                for n in oracle.enumerate_cof_morphisms(gamma, delta):
                    med = copair_cof(m, n)
                    validate_cof_morphism(med.carrier, total, delta)
                    assert compose_cof_morphisms(med, inl) == m
                    assert compose_cof_morphisms(med, inr) == n
                    candidates = [
                        k
                        for k in oracle.enumerate_cof_morphisms(total, delta)
                        if compose_cof_morphisms(k, inl) == m and compose_cof_morphisms(k, inr) == n
                    ]
                    assert candidates == [med]


@settings(max_examples=40, deadline=None)
@given(poset_raw(prefix="a"), poset_raw(prefix="b"), st.data())
def test_random_poset_cofunctors(ra, rb, data):
    A, B = validate_category(ra), validate_category(rb)
    found = oracle.enumerate_cofunctors(A, B)
    if not found:
        return
    phi = data.draw(st.sampled_from(found))
    validate_cofunctor(phi)
    assert from_span(to_span(phi)) == phi
