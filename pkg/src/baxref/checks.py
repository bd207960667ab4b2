"""Structured results of exact identity checks.

Library checkers return plain booleans by default; with ``detail=True``
they return a :class:`Check` carrying a witness for failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .linalg import Matrix

__all__ = ["Check", "compare", "PoleError"]


class PoleError(ZeroDivisionError):
    """A spectral parameter hit a pole of the construction."""


@dataclass
class Check:
    name: str
    passed: bool
    paper_anchor: str = ""
    parameters: dict = field(default_factory=dict)
    witness: Optional[dict] = None
    status: Optional[str] = None  # "pass" | "fail" | "skipped"
    note: Optional[str] = None

    def __post_init__(self):
        if self.status is None:
            self.status = "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "parameters": {k: _jsonable(v) for k, v in sorted(self.parameters.items())},
            "status": self.status,
        }
        if self.witness is not None:
            out["residual_location"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


def compare(lhs: Matrix, rhs: Matrix, name: str = "", anchor: str = "", **params) -> Check:
    """Exact ``lhs == rhs`` with the first differing entry as witness."""
    if lhs.dim != rhs.dim:
        return Check(name, False, anchor, params, {"error": f"dimension mismatch {lhs.dim} vs {rhs.dim}"})
    diff = lhs - rhs
    loc = diff.nonzero_witness()
    if loc is None:
        return Check(name, True, anchor, params)
    i, j = loc
    return Check(
        name, False, anchor, params,
        {"row": i, "col": j, "lhs": str(lhs[i, j]), "rhs": str(rhs[i, j])},
    )
