from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a law checker. Truthy iff no violation was found.

    ``violations`` holds witnesses in the shape documented by each checker;
    ``checked`` counts the cases that were examined.
    """

    name: str
    violations: tuple[Any, ...] = ()
    checked: int = 0
    exhaustive: bool = True
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        if self.ok:
            return f"{self.name}: ok ({self.checked} checked, {mode})"
        return f"{self.name}: FAIL {self.violations[0]} ({len(self.violations)} violations, {mode})"
