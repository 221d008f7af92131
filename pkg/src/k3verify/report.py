"""Scenario reports and their text/JSON rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import CycloNum
from .matgroup import PointP


@dataclass
class CheckResult:
    name: str
    ref: str
    expected: str
    actual: str
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "paper_ref": self.ref, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}


@dataclass
class Report:
    scenario: str
    checks: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {"scenario": self.scenario, "status": self.status,
                "checks": [c.as_dict() for c in self.checks], "elapsed_ms": int(self.elapsed_ms)}


REPORT_SCHEMA = {
    "type": "object",
    "required": ["scenario", "status", "checks", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "scenario": {"type": "string"},
        "status": {"enum": ["pass", "fail"]},
        "elapsed_ms": {"type": "integer"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "paper_ref", "expected", "actual", "pass"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "expected": {"type": "string"},
                    "actual": {"type": "string"},
                    "pass": {"type": "boolean"},
                },
            },
        },
    },
}


def show(value) -> str:
    """Canonical string form of a check value; equal values give equal strings."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(show(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {show(v)}" for k, v in value.items()) + "}"
    if isinstance(value, CycloNum):
        return value.minimal().render()
    if isinstance(value, PointP):
        cs = [show(x) for x in value.coords]
        if value.split:
            return f"([{':'.join(cs[:value.split])}],[{':'.join(cs[value.split:])}])"
        return "[" + ":".join(cs) + "]"
    render = getattr(value, "render", None)
    if callable(render):
        return render()
    return repr(value)


def emit_text(r: Report) -> str:
    lines = [f"scenario {r.scenario}: {r.status.upper()} ({len(r.checks)} checks, {r.elapsed_ms} ms)"]
    for c in r.checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"  [{mark}] {c.name} :: expected {c.expected} :: actual {c.actual} :: {c.ref}")
    return "\n".join(lines) + "\n"


def emit_json(reports) -> str:
    """One report gives an object, several give a list; keys keep schema order."""
    if isinstance(reports, Report):
        payload = reports.as_dict()
    else:
        payload = [r.as_dict() for r in reports]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def emit_report(r: Report, format: str = "text") -> bytes:
    if format == "text":
        return emit_text(r).encode("utf-8")
    if format == "json":
        return emit_json(r).encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def strip_timing(payload):
    """The JSON payload with elapsed_ms removed, for determinism comparisons."""
    if isinstance(payload, list):
        return [strip_timing(p) for p in payload]
    return {k: v for k, v in payload.items() if k != "elapsed_ms"}
