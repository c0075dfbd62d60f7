"""Assertion-list reports with deterministic JSON serialization."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1"


@dataclass
class Check:
    """One named assertion. ``ref`` names the mathematical statement being checked."""

    name: str
    passed: bool
    ref: str = ""
    expected: Any = None
    actual: Any = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "ref": self.ref}
        if self.expected is not None or self.actual is not None:
            d["expected"] = _jsonable(self.expected)
            d["actual"] = _jsonable(self.actual)
        return d


@dataclass
class Report:
    title: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, name: str, passed: bool, ref: str = "", expected=None, actual=None) -> bool:
        self.checks.append(Check(name, bool(passed), ref, expected, actual))
        return bool(passed)

    def expect_equal(self, name: str, expected, actual, ref: str = "") -> bool:
        return self.check(name, expected == actual, ref, expected, actual)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {"title": self.title, "params": _jsonable(self.params)}
        out.update(_jsonable(self.data))
        out["passed"] = self.passed
        out["assertions"] = [c.to_dict() for c in self.checks]
        return out

    def to_text(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.title} ({head}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if not c.passed:
                line += f"  expected={c.expected!r} actual={c.actual!r}  ({c.ref})"
            lines.append(line)
        return "\n".join(lines)


def _jsonable(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_jsonable(v) for v in obj), key=repr)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def dumps(payload) -> str:
    """Serialize with a schema tag; identical inputs give byte-identical output."""
    body = {"schema": SCHEMA_VERSION}
    body.update(_jsonable(payload) if isinstance(payload, dict) else {"result": _jsonable(payload)})
    return json.dumps(body, indent=2, sort_keys=False)
