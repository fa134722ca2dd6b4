"""Batch command-line interface.

Exit codes: 0 when every check passes, 1 on a law or verification failure
(a witness is printed), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from deltacat import cofree, files, oracle
from deltacat.cofunctor import (
    CofMorphism,
    Cofunctor,
    check_lift_table,
    cof_morphism_conditions,
    cofunctor_laws,
    coproduct_cof,
)
from deltacat.errors import DeltaCatError, MalformedInput
from deltacat.fincat import (
    FinCategory,
    category_laws,
    check_functor_shape,
    coproduct_cat,
    functor_laws,
    is_bijective_on_objects,
    validate_functor,
)
from deltacat.laws import LawCheck
from deltacat.lens import DeltaLens, coproduct_lens, get, lens_laws, put, underlying_cofunctor, validate_lens

EXIT = {"pass": 0, "fail": 1, "malformed": 2}


@dataclass
class CheckLine:
    law: str
    domain: int
    witness: Any = None
    witnesses: list[Any] = field(default_factory=list)


@dataclass
class Report:
    command: str
    status: str = "pass"
    checks: list[CheckLine] = field(default_factory=list)
    artifacts_written: list[str] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    def add(self, checks: list[LawCheck], all_witnesses: bool = False) -> None:
        for c in checks:
            line = CheckLine(c.law, c.domain)
            if not c.ok:
                line.witness = c.witnesses[0]
                if all_witnesses:
                    line.witnesses = list(c.witnesses)
                self.status = "fail"
            self.checks.append(line)

    def fail(self, law: str, exc: DeltaCatError) -> None:
        self.checks.append(CheckLine(law, 1, exc.witness if exc.witness is not None else str(exc)))
        self.status = "fail"
        self.error = f"{type(exc).__name__}: {exc}"

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(asdict(report), indent=2, default=list)
    lines = [f"{report.command}: {report.status}"]
    for c in report.checks:
        mark = "ok" if c.witness is None else "FAIL"
        lines.append(f"  [{mark}] {c.law} (checked {c.domain})")
        if c.witness is not None:
            lines.append(f"         witness: {c.witness}")
        for w in c.witnesses[1:]:
            lines.append(f"         witness: {w}")
    for k, v in report.values.items():
        lines.append(f"  {k}: {v}")
    for p in report.artifacts_written:
        lines.append(f"  wrote {p}")
    if report.error and report.status != "pass":
        lines.append(f"  error: {report.error}")
    return "\n".join(lines)


def _write(report: Report, path: str | None, value: Any) -> None:
    if path:
        files.write(path, files.to_json(value))
        report.artifacts_written.append(path)


# ---------------------------------------------------------------- commands


def law_suite(kind: str, value: Any, report: Report, all_witnesses: bool) -> None:
    """Run the law checks for one parsed value, recording witnesses instead of raising."""
    try:
        if kind == "category":
            report.add(category_laws(value), all_witnesses)
        elif kind == "functor":
            check_functor_shape(value)
            report.add(functor_laws(value), all_witnesses)
        elif kind == "cofunctor":
            check_lift_table(value.source, value.base, value.obj_map, value.lifts)
            report.add(cofunctor_laws(value), all_witnesses)
        elif kind == "lens":
            validate_functor(value.get)
            check_lift_table(value.source, value.base, value.get.obj_map, value.puts)
            report.add(lens_laws(value), all_witnesses)
        elif kind == "coalgebra":
            phi, carrier = value
            target = cofree.lr(phi)
            validate_functor(carrier)
            report.add(cof_morphism_conditions(carrier, phi, target), all_witnesses)
            if report.status == "pass":
                report.add(cofree.coalgebra_laws(phi, CofMorphism(phi, target, carrier)), all_witnesses)
    except MalformedInput:
        raise
    except DeltaCatError as exc:
        report.fail(f"{kind} structure", exc)


def cmd_check(args, report: Report) -> None:
    kind, value = files.load(args.file)
    report.values["kind"] = kind
    law_suite(kind, value, report, args.witness)


def cmd_get(args, report: Report) -> None:
    lens = files.parse(args.lens)
    report.values["get"] = get(lens, args.morphism)


def cmd_put(args, report: Report) -> None:
    lens = files.parse(args.lens)
    report.values["put"] = put(lens, args.object, args.morphism)


def _cofunctor_arg(path: str) -> Cofunctor:
    value = files.parse(path)
    if isinstance(value, DeltaLens):
        return underlying_cofunctor(value)
    if not isinstance(value, Cofunctor):
        raise MalformedInput(f"{path}: expected a cofunctor or lens file", witness=path)
    return value


def _lens_arg(path: str) -> DeltaLens:
    value = files.parse(path)
    if not isinstance(value, DeltaLens):
        raise MalformedInput(f"{path}: expected a lens file", witness=path)
    return value


def cmd_cofree(args, report: Report) -> None:
    phi = _cofunctor_arg(args.cofunctor)
    c = cofree.cofree_lens(phi)
    validate_lens(c.lens)
    report.add(lens_laws(c.lens), args.witness)
    report.values["apex"] = f"{len(c.apex.objects)} objects, {len(c.apex.src)} morphisms"
    _write(report, args.out, c.lens)


def cmd_factorize(args, report: Report) -> None:
    lens = _lens_arg(args.lens)
    first, second = cofree.factorize(lens)
    report.add(
        [
            _predicate("first factor is bijective on objects", is_bijective_on_objects(first.carrier)),
            _predicate("reassembly recovers the lens", cofree.reassemble(first, second) == lens),
        ],
        args.witness,
    )
    report.values["first"] = dict(first.carrier.mor_map)
    _write(report, args.out, second.lens)


def _predicate(law: str, holds: bool) -> LawCheck:
    check = LawCheck(law)
    check.record(holds, law)
    return check


def cmd_coalgebra(args, report: Report) -> None:
    if args.action == "verify":
        kind, value = files.load(args.file)
        if kind != "coalgebra":
            raise MalformedInput(f"{args.file}: expected a coalgebra file", witness=args.file)
        law_suite(kind, value, report, args.witness)
        if report.error is None:
            phi, carrier = value
            try:
                c = cofree.validate_coalgebra(phi, CofMorphism(phi, cofree.lr(phi), carrier))
            except DeltaCatError as exc:
                report.fail(type(exc).__name__, exc)
                return
            report.add([_predicate("forced shape <1_A, f>", c.has_forced_shape)], args.witness)
    elif args.action == "from-lens":
        lens = _lens_arg(args.file)
        c = cofree.lens_to_coalgebra(lens)
        cofree.validate_coalgebra(c.carrier, c.structure)
        report.add(cofree.coalgebra_laws(c.carrier, c.structure), args.witness)
        _write(report, args.out, c)
    else:
        value = files.parse(args.file)
        if not isinstance(value, cofree.Coalgebra):
            raise MalformedInput(f"{args.file}: expected a coalgebra file", witness=args.file)
        lens = cofree.coalgebra_to_lens(value)
        validate_lens(lens)
        report.add(lens_laws(lens), args.witness)
        _write(report, args.out, lens)


def cmd_coproduct(args, report: Report) -> None:
    left, right = files.parse(args.left), files.parse(args.right)
    if isinstance(left, DeltaLens) and isinstance(right, DeltaLens):
        total, _, _ = coproduct_lens(left, right)
        validate_lens(total)
        report.add(lens_laws(total), args.witness)
    elif isinstance(left, Cofunctor) and isinstance(right, Cofunctor):
        total, _, _ = coproduct_cof(left, right)
        report.add(cofunctor_laws(total), args.witness)
    elif isinstance(left, FinCategory) and isinstance(right, FinCategory):
        total, _, _ = coproduct_cat(left, right)
        report.add(category_laws(total), args.witness)
    else:
        raise MalformedInput("coproduct needs two categories, two cofunctors or two lenses", witness=(args.left, args.right))
    _write(report, args.out, total)


def cmd_triangles(args, report: Report) -> None:
    phi = _cofunctor_arg(args.cofunctor)
    lens = _lens_arg(args.lens)
    report.add(cofree.triangle_laws(phi, lens), args.witness)


def cmd_comonad_laws(args, report: Report) -> None:
    phi = _cofunctor_arg(args.cofunctor)
    report.add(cofree.comonad_laws(phi), args.witness)


def _bounds(text: str) -> oracle.EnumBounds:
    try:
        objects, morphisms = (int(x) for x in text.split(","))
        return oracle.EnumBounds(objects, morphisms)
    except ValueError:
        raise argparse.ArgumentTypeError("bounds are given as <objects>,<morphisms>") from None


def cmd_enumerate(args, report: Report) -> None:
    A, B = files.parse(args.source), files.parse(args.base)
    if not (isinstance(A, FinCategory) and isinstance(B, FinCategory)):
        raise MalformedInput("enumerate takes two category files", witness=(args.source, args.base))
    bounds = args.bounds
    if args.kind == "functors":
        items = oracle.enumerate_functors(A, B, bounds)
    else:
        cofunctors = oracle.enumerate_cofunctors(A, B, bounds)
        if args.kind == "cofunctors":
            items = cofunctors
        elif args.kind == "lenses":
            items = [l for phi in cofunctors for l in oracle.enumerate_lenses_over(phi, bounds)]
        else:
            items = [c for phi in cofunctors for c in oracle.enumerate_coalgebras(phi, bounds)]
            lenses = sum(len(oracle.enumerate_lenses_over(phi, bounds)) for phi in cofunctors)
            check = LawCheck("coalgebras and lenses are equinumerous")
            check.record(len(items) == lenses, (len(items), lenses))
            report.add([check], args.witness)
    report.values["count"] = len(items)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = {"functors": "fun", "cofunctors": "cof", "lenses": "lens", "coalgebras": "coalg"}[args.kind]
        for i, item in enumerate(items):
            path = out / f"{args.kind}_{i:03d}.{ext}.json"
            files.write(path, files.to_json(item))
            report.artifacts_written.append(str(path))


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--witness", action="store_true", help="print every witness, not just the first")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the constructed value here in canonical form")

    parser = argparse.ArgumentParser(prog="deltacat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check every law for a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("get", parents=[common], help="apply a lens's Get to a morphism")
    p.add_argument("lens")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_get)

    p = sub.add_parser("put", parents=[common], help="apply a lens's Put at an object")
    p.add_argument("lens")
    p.add_argument("object")
    p.add_argument("morphism")
    p.set_defaults(func=cmd_put)

    p = sub.add_parser("cofree", parents=[common], help="build the cofree lens on a cofunctor")
    p.add_argument("cofunctor")
    p.set_defaults(func=cmd_cofree)

    p = sub.add_parser("factorize", parents=[common], help="factor a lens through its cofree lens")
    p.add_argument("lens")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("coalgebra", parents=[common], help="verify or convert coalgebras")
    p.add_argument("action", choices=("verify", "from-lens", "to-lens"))
    p.add_argument("file")
    p.set_defaults(func=cmd_coalgebra)

    p = sub.add_parser("coproduct", parents=[common], help="coproduct of two categories, cofunctors or lenses")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_coproduct)

    p = sub.add_parser("triangles", parents=[common], help="check both triangle identities")
    p.add_argument("cofunctor")
    p.add_argument("lens")
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("comonad-laws", parents=[common], help="check counitality and coassociativity")
    p.add_argument("cofunctor")
    p.set_defaults(func=cmd_comonad_laws)

    p = sub.add_parser("enumerate", parents=[common], help="brute-force enumeration between two categories")
    p.add_argument("source")
    p.add_argument("base")
    p.add_argument("--kind", choices=("functors", "cofunctors", "lenses", "coalgebras"), default="cofunctors")
    p.add_argument("--bounds", type=_bounds, default=oracle.DEFAULT_BOUNDS)
    p.set_defaults(func=cmd_enumerate)
    return parser


def execute(args: argparse.Namespace) -> Report:
    command = args.command if args.command != "coalgebra" else f"coalgebra {args.action}"
    report = Report(command)
    try:
        args.func(args, report)
    except MalformedInput as exc:
        report.status = "malformed"
        report.error = f"{type(exc).__name__}: {exc}"
    except DeltaCatError as exc:
        report.fail(type(exc).__name__, exc)
    return report


def run(argv: list[str]) -> tuple[Report, int]:
    report = execute(build_parser().parse_args(argv))
    return report, report.exit_code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(sys.argv[1:] if argv is None else argv)
    report = execute(args)
    print(render(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
