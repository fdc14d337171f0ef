"""Witness-carrying reports produced by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Violation:
    """One failed check with a concrete witness."""

    check: str
    witness: tuple
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"check": self.check, "witness": list(self.witness), "detail": self.detail}

    def __str__(self) -> str:
        msg = f"{self.check}: witness {self.witness}"
        return f"{msg} ({self.detail})" if self.detail else msg


@dataclass
class Report:
    """Accumulated violations; empty means every checked axiom holds."""

    subject: str = ""
    violations: list[Violation] = field(default_factory=list)

    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, witness: Iterable[Any], detail: str = "") -> None:
        self.violations.append(Violation(check, tuple(witness), detail))

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)

    def checks_failed(self) -> set[str]:
        return {v.check for v in self.violations}

    def to_json(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok(),
            "violations": [v.to_json() for v in self.violations],
        }

    def summary(self, limit: int = 5) -> str:
        if self.ok():
            return f"{self.subject or 'report'}: ok"
        head = "; ".join(str(v) for v in self.violations[:limit])
        extra = len(self.violations) - limit
        tail = f" (+{extra} more)" if extra > 0 else ""
        return f"{self.subject or 'report'}: {head}{tail}"

    def __len__(self) -> int:
        return len(self.violations)
