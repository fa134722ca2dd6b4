"""Acceptance criteria, one test each, exact and at desk scale.

Every test prints a single ``PASS``/``FAIL`` line (visible with ``pytest -s``
or when this file is run directly).
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from deltacat import cli, files, fixtures, oracle
from deltacat.cofree import (
    check_triangle_identities,
    coalgebra_to_lens,
    cofree_lens,
    comonad_laws,
    factorize,
    lens_to_coalgebra,
    reassemble,
    validate_coalgebra,
)
from deltacat.cofunctor import (
    coproduct_cof,
    cofunctor_laws,
    from_span,
    identity_cofunctor,
    is_cof_morphism,
    to_span,
    validate_cof_morphism,
)
from deltacat.errors import DeltaCatError
from deltacat.fincat import Functor, category_laws, compose_functors, is_bijective_on_objects, is_discrete_opfibration
from deltacat.lens import (
    LensMorphism,
    compose_lens_morphisms,
    copair_lens,
    coproduct_lens,
    lens_laws,
    underlying_cofunctor,
    validate_lens,
    validate_lens_morphism,
)

SMALL = ("one", "two", "loop", "discrete2", "parallel")  # at most two objects


def criterion(number: int, title: str, limit: float | None = None):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                assert limit is None or elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
            except BaseException as exc:
                print(f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
                raise
            print(f"PASS criterion {number}: {title} ({elapsed:.2f}s)")

        return run

    return wrap


def cofunctors(cats):
    return list(oracle.sweep_cofunctors(cats))


def lenses(cats):
    return list(oracle.sweep_lenses(cats))


def valid(fn, *args) -> bool:
    try:
        fn(*args)
    except DeltaCatError:
        return False
    return True


@criterion(1, "cofunctor and lens axioms hold exhaustively on every enumerated instance", limit=5.0)
def test_law_suites():
    cats = fixtures.all_fixtures()
    for C in cats.values():
        assert all(c.ok for c in category_laws(C))
    phis = cofunctors(cats)
    ls = lenses(cats)
    assert phis and ls
    for _, _, phi in phis:
        checks = cofunctor_laws(phi)
        assert len(checks) == 3 and all(c.ok for c in checks)
    for _, _, lens in ls:
        checks = lens_laws(lens)
        assert len(checks) == 3 and all(c.ok for c in checks)


@criterion(2, "from_span after to_span is the identity and both legs have their shape")
def test_span_equivalence():
    for _, _, phi in cofunctors(fixtures.all_fixtures()):
        s = to_span(phi)
        assert is_bijective_on_objects(s.left)
        assert is_discrete_opfibration(s.right)
        assert from_span(s).lifts == phi.lifts
        assert from_span(s) == phi


@criterion(3, "lens laws hold iff Get is a Cof(B) morphism into the trivial cofunctor")
def test_lens_iff_cof_morphism():
    cats = fixtures.all_fixtures()
    seen = agreed_valid = 0
    for na, nb in itertools.product(fixtures.NAMES, repeat=2):
        A, B = cats[na], cats[nb]
        for lens in oracle.enumerate_lens_candidates(A, B):
            as_lens = valid(validate_lens, lens)
            as_morphism = valid(validate_cof_morphism, lens.get, underlying_cofunctor(lens), identity_cofunctor(B))
            assert as_lens == as_morphism, (na, nb, lens.get.mor_map, lens.puts)
            assert as_morphism == is_cof_morphism(lens.get, underlying_cofunctor(lens), identity_cofunctor(B))
            seen += 1
            agreed_valid += as_lens
    assert seen > agreed_valid == len(lenses(cats))


@criterion(4, "cofree apex: |P0| = |A0| and |P(a,a')| = |A(a,a')| * |B(fa,fa')|")
def test_counting_law():
    for _, _, phi in cofunctors(fixtures.all_fixtures()):
        A, B, f0 = phi.source, phi.base, phi.obj_map
        P = cofree_lens(phi).apex
        assert len(P.objects) == len(A.objects)
        for a, a2 in itertools.product(A.objects, repeat=2):
            assert len(P.hom(a, a2)) == len(A.hom(a, a2)) * len(B.hom(f0[a], f0[a2]))


@criterion(5, "both triangle identities hold for every cofunctor and lens", limit=10.0)
def test_triangles():
    cats = fixtures.all_fixtures()
    ls = lenses(cats)
    by_base = {}
    for _, nb, lens in ls:
        by_base.setdefault(nb, []).append(lens)
    pairs = 0
    for _, nb, phi in cofunctors(cats):
        for lens in by_base.get(nb, []):
            checks = check_triangle_identities(phi, lens)
            assert all(c.ok for c in checks)
            pairs += 1
    assert pairs > 0


@criterion(6, "counitality on both sides and coassociativity of the comonad")
def test_comonad_laws():
    for _, _, phi in cofunctors(fixtures.all_fixtures()):
        checks = comonad_laws(phi)
        assert len(checks) == 3 and all(c.ok for c in checks), [c.witnesses[:1] for c in checks]


@criterion(7, "coalgebras and lenses over each cofunctor are in bijection", limit=30.0)
def test_coalgebra_lens_bijection():
    total = 0
    for _, _, phi in cofunctors(fixtures.all_fixtures()):
        coalgebras = oracle.enumerate_coalgebras(phi)
        over = oracle.enumerate_lenses_over(phi)
        assert len(coalgebras) == len(over)
        to_lens = [coalgebra_to_lens(c) for c in coalgebras]
        assert sorted(map(repr, to_lens)) == sorted(map(repr, over))
        assert len({repr(l) for l in to_lens}) == len(to_lens)
        for c in coalgebras:
            assert lens_to_coalgebra(coalgebra_to_lens(c)) == c
        for lens in over:
            c = lens_to_coalgebra(lens)
            validate_coalgebra(c.carrier, c.structure)
            assert coalgebra_to_lens(c) == lens
        total += len(over)
    assert total > 0


def _lens_morphisms(dom, cod):
    out = []
    for m in oracle.enumerate_cof_morphisms(underlying_cofunctor(dom), underlying_cofunctor(cod)):
        if compose_functors(cod.get, m.carrier) == dom.get:
            out.append(LensMorphism(dom, cod, m.carrier))
    return out


@criterion(8, "L sends lens coproducts to cofunctor coproducts and mediators are unique")
def test_coproduct_creation():
    cats = fixtures.all_fixtures()
    small = {n: cats[n] for n in SMALL}
    by_base = {}
    for _, nb, lens in oracle.sweep_lenses(small):
        by_base.setdefault(nb, []).append(lens)
    cocones = 0
    for base, ls in by_base.items():
        for l1, l2 in itertools.product(ls, repeat=2):
            total, inl, inr = coproduct_lens(l1, l2)
            validate_lens(total)
            validate_lens_morphism(inl.carrier, l1, total)
            validate_lens_morphism(inr.carrier, l2, total)
            cof, cinl, cinr = coproduct_cof(underlying_cofunctor(l1), underlying_cofunctor(l2))
            assert underlying_cofunctor(total) == cof
            assert inl.cof_part == cinl and inr.cof_part == cinr
            for tgt in ls:
                outs = _lens_morphisms(total, tgt)
                for m in _lens_morphisms(l1, tgt):
                    for n in _lens_morphisms(l2, tgt):
                        med = copair_lens(m, n)
                        validate_lens_morphism(med.carrier, total, tgt)
                        matching = [
                            k for k in outs if compose_lens_morphisms(k, inl) == m and compose_lens_morphisms(k, inr) == n
                        ]
                        assert matching == [med]
                        cocones += 1
    assert cocones > 0


@criterion(9, "every lens factors as a bijective-on-objects map followed by a cofree lens")
def test_factorisation():
    for _, _, lens in lenses(fixtures.all_fixtures()):
        first, second = factorize(lens)
        assert is_bijective_on_objects(first.carrier)
        validate_lens_morphism(first.carrier, lens, second.lens)
        assert second == cofree_lens(underlying_cofunctor(lens))
        assert compose_functors(second.lens.get, first.carrier) == lens.get
        assert reassemble(first, second) == lens


def _cli(*argv, seed: str) -> subprocess.CompletedProcess:
    env = {**os.environ, "PYTHONHASHSEED": seed}
    return subprocess.run([sys.executable, "-m", "deltacat.cli", *map(str, argv)], env=env, capture_output=True, text=True)


@criterion(10, "parse/serialize round trip, byte-stable output and the exit-code contract")
def test_cli_round_trip(tmp_path: Path):
    cats = fixtures.all_fixtures()
    for path in sorted(fixtures.BUILTIN_DIR.glob("*.json")):
        value = files.parse(path)
        again = tmp_path / path.name
        files.write(again, files.to_json(value))
        assert files.parse(again) == value
        assert files.serialize(files.parse(again)) == files.serialize(value)

    # byte stability across two separate processes with different hash seeds
    outputs = []
    for seed in ("1", "2"):
        out = tmp_path / f"cofree{seed}.lens.json"
        assert _cli("cofree", "identity-loop.cof.json", "--out", out, seed=seed).returncode == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]

    # exit codes: pass, law failure with witness, malformed input
    assert _cli("check", tmp_path / "cofree1.lens.json", seed="0").returncode == 0

    D, one = cats["discrete2"], cats["one"]
    [phi] = [p for p in oracle.enumerate_cofunctors(D, one)]
    target = underlying_cofunctor(cofree_lens(phi).lens)
    swap = {"0": "1", "1": "0"}
    carrier = Functor(D, target.source, swap, {f"id_{a}": f"(id_{b},id_*)" for a, b in swap.items()})
    validate_cof_morphism(carrier, phi, target)
    bad = tmp_path / "bad.coalg.json"
    files.write(bad, files.coalgebra_to_json(phi, carrier))
    result = _cli("coalgebra", "verify", bad, seed="0")
    assert result.returncode == 1 and "CounitLawViolation" in result.stdout and "witness" in result.stdout
    report, code = cli.run(["coalgebra", "verify", str(bad)])
    assert code == 1 and all(c.witness is not None for c in report.checks if c.law == "CounitLawViolation")

    broken = tmp_path / "broken.cat.json"
    broken.write_text(json.dumps({"objects": ["a"], "morphisms": [{"name": "f", "src": "b", "tgt": "a"}]}))
    assert _cli("check", broken, seed="0").returncode == 2
    garbled = tmp_path / "garbled.lens.json"
    garbled.write_text("{not json")
    assert _cli("check", garbled, seed="0").returncode == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
