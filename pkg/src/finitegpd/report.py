"""Structured pass/fail reports with counterexample witnesses.

Every verifier in this package returns a Report: an ordered list of named
checks, each PASS or FAIL, with a witness payload on failure (the smallest
piece of data demonstrating the violation).  Reports render to text or JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class Check:
    law: str
    status: str  # "PASS" or "FAIL"
    witness: Optional[Any] = None

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"law": self.law, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, law: str, ok: bool, witness: Any = None) -> bool:
        self.checks.append(Check(law, "PASS" if ok else "FAIL",
                                 None if ok else witness))
        return ok

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            law = f"{prefix}{c.law}" if prefix else c.law
            self.checks.append(Check(law, c.status, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)

    def first_failure(self) -> Optional[Check]:
        for c in self.checks:
            if c.status == "FAIL":
                return c
        return None

    def render(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{c.status}] {c.law}"
            if c.witness is not None:
                line += f"  witness={json.dumps(c.witness, sort_keys=True, default=str)}"
            lines.append(line)
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.as_dict() for c in self.checks]}
