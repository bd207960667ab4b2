"""Versioned JSON run reports.

The report *body* (everything except the ``timing`` block) is a pure
function of the run configuration, so identical configs and seeds give
byte-identical bodies.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional

from . import __version__
from .checks import Check, _jsonable

__all__ = ["SCHEMA_VERSION", "REPORT_SCHEMA", "Report", "dumps_body", "validate"]

SCHEMA_VERSION = "baxref-report/1"

_CHECK_SCHEMA = {
    "type": "object",
    "required": ["name", "paper_anchor", "parameters", "status"],
    "properties": {
        "name": {"type": "string"},
        "paper_anchor": {"type": "string"},
        "parameters": {"type": "object"},
        "status": {"enum": ["pass", "fail", "skipped"]},
        "residual_location": {"type": "object"},
        "note": {"type": "string"},
    },
    # a failure must carry a witness
    "if": {"properties": {"status": {"const": "fail"}}},
    "then": {"required": ["residual_location"]},
}

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "tool", "version", "command", "config", "summary", "checks", "results", "timing"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "tool": {"const": "baxref"},
        "version": {"type": "string"},
        "command": {"enum": ["verify", "chain", "spectrum"]},
        "config": {"type": "object"},
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "skipped", "ok"],
            "properties": {
                "pass": {"type": "integer", "minimum": 0},
                "fail": {"type": "integer", "minimum": 0},
                "skipped": {"type": "integer", "minimum": 0},
                "ok": {"type": "boolean"},
            },
        },
        "checks": {"type": "array", "items": _CHECK_SCHEMA},
        "results": {"type": "object"},
        "timing": {"type": "object"},
    },
}


def _sort_key(rec: dict) -> tuple[str, str]:
    return rec["name"], json.dumps(rec["parameters"], sort_keys=True)


class Report:
    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = {k: _jsonable(v) for k, v in sorted(config.items())}
        self.checks: list[Check] = []
        self.results: dict[str, Any] = {}
        self.timing: dict[str, float] = {}

    def add(self, checks: Iterable[Check] | Check, seconds: Optional[float] = None, label: Optional[str] = None):
        if isinstance(checks, Check):
            checks = [checks]
        self.checks.extend(checks)
        if seconds is not None and label is not None:
            self.timing[label] = round(self.timing.get(label, 0.0) + seconds, 6)

    def error(self, name: str, message: str, anchor: str = "", **params) -> None:
        """A failed record for an error that prevents a check from running."""
        self.checks.append(Check(name, False, anchor, params, {"error": message}))

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict[str, Any]:
        recs = sorted((c.to_json() for c in self.checks), key=_sort_key)
        counts = {s: sum(1 for r in recs if r["status"] == s) for s in ("pass", "fail", "skipped")}
        return {
            "schema": SCHEMA_VERSION,
            "tool": "baxref",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "summary": {**counts, "ok": counts["fail"] == 0},
            "checks": recs,
            "results": _jsonable(self.results),
            "timing": {k: self.timing[k] for k in sorted(self.timing)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"


def dumps_body(report_json: dict) -> str:
    """Canonical serialization of a report without its timing block."""
    body = {k: v for k, v in report_json.items() if k != "timing"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def validate(report_json: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not match the schema."""
    import jsonschema

    jsonschema.validate(report_json, REPORT_SCHEMA)
