"""Structured pass/fail results shared by all verifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, List, Optional

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    count: int = 0
    witness: Optional[Any] = None
    detail: str = ""
    wall_time: float = 0.0

    def to_obj(self, timing: bool = False) -> dict:
        obj = {"name": self.name, "status": self.status, "count": self.count}
        if self.detail:
            obj["detail"] = self.detail
        if self.witness is not None:
            obj["witness"] = self.witness
        if timing:
            obj["wall_time"] = round(self.wall_time, 3)
        return obj


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    spec: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks) and any(c.status == "pass" for c in self.checks)

    def add(self, name: str, ok: bool, count: int = 0, witness=None, detail: str = "", wall_time: float = 0.0) -> Check:
        c = Check(name, "pass" if ok else "fail", count, witness, detail, wall_time)
        self.checks.append(c)
        return c

    def skip(self, name: str, detail: str = "") -> Check:
        c = Check(name, "skipped", 0, None, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.count, c.witness, c.detail, c.wall_time))
        return self

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_obj(self, timing: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "title": self.title,
            "spec": self.spec,
            "ok": self.ok,
            "checks": [c.to_obj(timing) for c in self.checks],
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_obj(timing), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{c.status}] {c.name} ({c.count})" + (f" {c.detail}" if c.detail else ""))
        return "\n".join(lines)
