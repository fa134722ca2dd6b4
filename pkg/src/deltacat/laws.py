from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class LawCheck:
    """Outcome of one universally quantified law over a finite domain.

    ``domain`` is the number of tuples the law was checked on and
    ``witnesses`` lists every tuple on which it failed, in iteration order.
    """

    law: str
    domain: int = 0
    witnesses: list[Any] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses

    def record(self, holds: bool, witness: Any) -> None:
        self.domain += 1
        if not holds:
            self.witnesses.append(witness)


def first_failure(checks: list[LawCheck]) -> LawCheck | None:
    for check in checks:
        if not check.ok:
            return check
    return None
