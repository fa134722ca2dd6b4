"""Desk-scale sweep over the curated fixtures.

Enumerates every cofunctor and lens between the fixture categories, then
counts coalgebras, checks the triangle and comonad laws, and prints counts
and timings. Exits non-zero if any check fails.

    python3 scripts/sweep.py
    python3 scripts/sweep.py --fixtures one two loop --bounds 3,9
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from deltacat import fixtures, oracle
from deltacat.cofree import (
    coalgebra_to_lens,
    comonad_laws,
    factorize,
    lens_to_coalgebra,
    reassemble,
    triangle_laws,
)
from deltacat.cofunctor import from_span, to_span
from deltacat.lens import underlying_cofunctor


@dataclass
class SweepConfig:
    names: tuple[str, ...] = fixtures.NAMES
    bounds: oracle.EnumBounds = field(default_factory=oracle.EnumBounds)


@dataclass
class SweepResult:
    cofunctors: int = 0
    lenses: int = 0
    coalgebras: int = 0
    failures: Counter = field(default_factory=Counter)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and self.coalgebras == self.lenses


def sweep(config: SweepConfig) -> SweepResult:
    cats = {n: fixtures.fixture(n) for n in config.names}
    result = SweepResult()

    start = time.perf_counter()
    phis = [phi for _, _, phi in oracle.sweep_cofunctors(cats, config.bounds)]
    result.cofunctors = len(phis)
    result.timings["enumerate"] = time.perf_counter() - start

    start = time.perf_counter()
    for phi in phis:
        if from_span(to_span(phi)) != phi:
            result.failures["span round trip"] += 1
        if not all(c.ok for c in comonad_laws(phi)):
            result.failures["comonad laws"] += 1
        over = oracle.enumerate_lenses_over(phi, config.bounds)
        coalgebras = oracle.enumerate_coalgebras(phi, config.bounds)
        result.lenses += len(over)
        result.coalgebras += len(coalgebras)
        if sorted(map(repr, over)) != sorted(repr(coalgebra_to_lens(c)) for c in coalgebras):
            result.failures["coalgebra/lens bijection"] += 1
        for lens in over:
            if not all(c.ok for c in triangle_laws(phi, lens)):
                result.failures["triangle identities"] += 1
            if coalgebra_to_lens(lens_to_coalgebra(lens)) != lens:
                result.failures["coalgebra round trip"] += 1
            if reassemble(*factorize(lens)) != lens or underlying_cofunctor(lens) != phi:
                result.failures["factorisation"] += 1
    result.timings["laws"] = time.perf_counter() - start
    return result


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fixtures", nargs="+", default=list(fixtures.NAMES), choices=fixtures.NAMES)
    parser.add_argument("--bounds", default="3,9", help="<objects>,<morphisms>")
    args = parser.parse_args(argv)
    objects, morphisms = (int(x) for x in args.bounds.split(","))
    result = sweep(SweepConfig(tuple(args.fixtures), oracle.EnumBounds(objects, morphisms)))

    print(f"fixtures:   {', '.join(args.fixtures)}")
    print(f"cofunctors: {result.cofunctors}")
    print(f"lenses:     {result.lenses}")
    print(f"coalgebras: {result.coalgebras}")
    for stage, seconds in result.timings.items():
        print(f"time {stage}: {seconds:.2f}s")
    for law, n in sorted(result.failures.items()):
        print(f"FAILED {law}: {n}")
    print("all checks pass" if result.ok else "sweep found failures")
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
