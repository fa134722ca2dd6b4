"""JSON file formats and their canonical serialization.

Kinds are chosen by extension: ``.cat.json``, ``.fun.json``, ``.cof.json``,
``.lens.json`` and ``.coalg.json``. A nested category may be inline or a
reference string, resolved relative to the referencing file and then
against the fixture directory.

Canonical form: sorted keys, sorted arrays, two-space indent, LF endings,
trailing newline. Identities are implicit unless some identity is not
named ``id_<object>``, in which case an ``identities`` table is written and
the identities are listed among the morphisms.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from deltacat import fixtures
from deltacat.cofunctor import Cofunctor, make_cofunctor, validate_cof_morphism, validate_cofunctor
from deltacat.errors import MalformedInput
from deltacat.fincat import FinCategory, Functor, default_identity, make_functor, validate_category, validate_functor
from deltacat.lens import DeltaLens, make_lens, validate_lens

KINDS = {
    ".cat.json": "category",
    ".fun.json": "functor",
    ".cof.json": "cofunctor",
    ".lens.json": "lens",
    ".coalg.json": "coalgebra",
}


def kind_of(path: str | Path) -> str:
    name = Path(path).name
    for ext, kind in KINDS.items():
        if name.endswith(ext):
            return kind
    raise MalformedInput(f"{path}: cannot tell the file kind from its extension", witness=name)


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write(path: str | Path, data: Any) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(data))
    return path


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"{path}: cannot read file ({exc.strerror})", witness=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}", witness=exc.lineno) from None


def _key(data: Any, key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise MalformedInput(f"{where}: expected a JSON object", witness=where)
    if key not in data:
        raise MalformedInput(f"{where}: missing key {key!r}", witness=key)
    return data[key]


def resolve(ref: str, base_dir: Path | None) -> Path:
    """Find a referenced file: next to the referrer first, then among the fixtures."""
    candidates = []
    if base_dir is not None:
        candidates.append(base_dir / ref)
    candidates.append(Path(ref))
    fixture_dir = fixtures.fixture_dir()
    candidates += [fixture_dir / ref, fixture_dir / f"{ref}.cat.json"]
    for c in candidates:
        if c.is_file():
            return c
    raise MalformedInput(f"cannot resolve reference {ref!r}", witness=ref)


# ------------------------------------------------------------ categories


def category_to_json(C: FinCategory) -> dict:
    implicit = all(i == default_identity(a) for a, i in C.identity.items())
    listed = [w for w in C.morphisms if not (implicit and C.is_identity(w))]
    data = {
        "objects": sorted(C.objects),
        "morphisms": [{"name": w, "src": C.src[w], "tgt": C.tgt[w]} for w in sorted(listed)],
        "compose": sorted(
            [f, g, gf] for (g, f), gf in C.comp.items() if not (C.is_identity(f) or C.is_identity(g))
        ),
    }
    if not implicit:
        data["identities"] = dict(sorted(C.identity.items()))
    return data


def category_from_json(data: Any, base_dir: Path | None = None, where: str = "category") -> FinCategory:
    if isinstance(data, str):
        path = resolve(data, base_dir)
        return category_from_json(_read_json(path), path.parent, str(path))
    for key in ("objects", "morphisms"):
        _key(data, key, where)
    try:
        return validate_category(data)
    except MalformedInput as exc:
        exc.message = f"{where}: {exc.message}"
        raise


# --------------------------------------------------------------- functors


def functor_to_json(F: Functor, target_key: str = "target") -> dict:
    return {
        "source": category_to_json(F.source),
        target_key: category_to_json(F.target),
        "object_map": dict(F.obj_map),
        "morphism_map": dict(F.mor_map),
    }


def functor_from_json(data: Any, base_dir: Path | None = None, where: str = "functor", target_key: str = "target") -> Functor:
    if isinstance(data, str):
        path = resolve(data, base_dir)
        return functor_from_json(_read_json(path), path.parent, str(path), target_key)
    source = category_from_json(_key(data, "source", where), base_dir, f"{where}.source")
    target = category_from_json(_key(data, target_key, where), base_dir, f"{where}.{target_key}")
    obj_map = _key(data, "object_map", where)
    mor_map = dict(_key(data, "morphism_map", where))
    for a in source.objects:
        # identities may be left implicit
        if a in obj_map and obj_map[a] in target.identity:
            mor_map.setdefault(source.identity[a], target.identity[obj_map[a]])
    return make_functor(source, target, obj_map, mor_map)


# ------------------------------------------------------------- cofunctors


def _table_to_json(table: dict) -> list[dict]:
    return [{"at": a, "over": u, "chosen": w} for (a, u), w in sorted(table.items())]


def _table_from_json(rows: Any, where: str) -> dict:
    if not isinstance(rows, list):
        raise MalformedInput(f"{where}: expected a list of lift rows", witness=where)
    table = {}
    for i, row in enumerate(rows):
        at = _key(row, "at", f"{where}[{i}]")
        over = _key(row, "over", f"{where}[{i}]")
        if (at, over) in table:
            raise MalformedInput(f"{where}[{i}]: duplicate row", witness=(at, over))
        table[at, over] = _key(row, "chosen", f"{where}[{i}]")
    return table


def cofunctor_to_json(phi: Cofunctor) -> dict:
    return {
        "source": category_to_json(phi.source),
        "base": category_to_json(phi.base),
        "object_map": dict(phi.obj_map),
        "lifts": _table_to_json(phi.lifts),
    }


def cofunctor_from_json(data: Any, base_dir: Path | None = None, where: str = "cofunctor") -> Cofunctor:
    if isinstance(data, str):
        path = resolve(data, base_dir)
        return cofunctor_from_json(_read_json(path), path.parent, str(path))
    source = category_from_json(_key(data, "source", where), base_dir, f"{where}.source")
    base = category_from_json(_key(data, "base", where), base_dir, f"{where}.base")
    obj_map = _key(data, "object_map", where)
    lifts = _table_from_json(_key(data, "lifts", where), f"{where}.lifts")
    return make_cofunctor(source, base, obj_map, lifts)


# ----------------------------------------------------------------- lenses


def lens_to_json(lens: DeltaLens) -> dict:
    return {"get": functor_to_json(lens.get, "base"), "puts": _table_to_json(lens.puts)}


def lens_from_json(data: Any, base_dir: Path | None = None, where: str = "lens") -> DeltaLens:
    get = functor_from_json(_key(data, "get", where), base_dir, f"{where}.get", target_key="base")
    puts = _table_from_json(_key(data, "puts", where), f"{where}.puts")
    return make_lens(get, puts)


# ------------------------------------------------------------- coalgebras


def coalgebra_to_json(phi: Cofunctor, carrier: Functor) -> dict:
    return {
        "cofunctor": cofunctor_to_json(phi),
        "carrier_object_map": dict(carrier.obj_map),
        "carrier_morphism_map": dict(carrier.mor_map),
    }


def coalgebra_from_json(data: Any, base_dir: Path | None = None, where: str = "coalgebra"):
    """Returns (phi, carrier); the carrier's target is the cofree apex of phi."""
    from deltacat.cofree import lr

    phi = cofunctor_from_json(_key(data, "cofunctor", where), base_dir, f"{where}.cofunctor")
    target = lr(phi).source
    carrier = make_functor(
        phi.source,
        target,
        _key(data, "carrier_object_map", where),
        _key(data, "carrier_morphism_map", where),
    )
    return phi, carrier


# ---------------------------------------------------------------- entry points


_FROM = {
    "category": category_from_json,
    "functor": functor_from_json,
    "cofunctor": cofunctor_from_json,
    "lens": lens_from_json,
    "coalgebra": coalgebra_from_json,
}


def load(path: str | Path) -> tuple[str, Any]:
    """Read a file without running law checks beyond those of its categories."""
    path = Path(path)
    if not path.is_file():
        path = resolve(str(path), None)
    kind = kind_of(path)
    data = _read_json(path)
    return kind, _FROM[kind](data, path.parent, str(path))


def parse(path: str | Path) -> Any:
    """Read and fully validate a file; the value's kind follows the extension."""
    kind, value = load(path)
    if kind == "functor":
        validate_functor(value)
    elif kind == "cofunctor":
        validate_cofunctor(value)
    elif kind == "lens":
        validate_lens(value)
    elif kind == "coalgebra":
        from deltacat.cofree import lr, validate_coalgebra
        from deltacat.cofunctor import CofMorphism

        phi, carrier = value
        validate_cof_morphism(carrier, phi, lr(phi))
        return validate_coalgebra(phi, CofMorphism(phi, lr(phi), carrier))
    return value


def to_json(value: Any) -> dict:
    from deltacat.cofree import Coalgebra

    if isinstance(value, FinCategory):
        return category_to_json(value)
    if isinstance(value, Functor):
        return functor_to_json(value)
    if isinstance(value, Cofunctor):
        return cofunctor_to_json(value)
    if isinstance(value, DeltaLens):
        return lens_to_json(value)
    if isinstance(value, Coalgebra):
        return coalgebra_to_json(value.carrier, value.structure.carrier)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def serialize(value: Any) -> str:
    return dumps(to_json(value))
