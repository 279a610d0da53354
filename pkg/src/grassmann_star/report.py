"""Residual reports shared by the check operations and the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Check:
    id: str
    paper_eq: str  # the relation being checked, written as a formula
    residual: float
    passed: bool
    informational: bool = False
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        if not self.note:
            d.pop("note")
        if not self.informational:
            d.pop("informational")
        return d


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, relation: str, residual: float, tol: float = 0.0,
            informational: bool = False, note: str = "", expect_above: bool = False) -> Check:
        residual = float(residual)
        passed = bool(residual > tol if expect_above else residual <= tol)
        check = Check(id, relation, residual, passed, informational, note)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.paper_eq, c.residual, c.passed,
                                     c.informational, c.note))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def __getitem__(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)
