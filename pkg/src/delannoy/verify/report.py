"""Check outcome records and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..multipoly import MultiPoly, poly_to_json, pretty

WITNESS_DISPLAY_TERMS = 20


@dataclass
class CheckReport:
    name: str
    params: Dict[str, Any]
    status: str
    witness: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0
    note: Optional[str] = None

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "pass") != (self.witness is None):
            raise ValueError("a report carries a witness exactly when it fails")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def sort_key(self):
        return (self.name, tuple(sorted((k, str(v)) for k, v in self.params.items())))

    def to_json(self) -> Dict[str, Any]:
        out = {
            "check": self.name,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if self.note:
            out["note"] = self.note
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def poly_witness(diff: MultiPoly) -> Dict[str, Any]:
    """Full difference polynomial plus a display string cut to 20 terms."""
    terms = diff.sorted_terms()
    shown = MultiPoly.from_terms(dict(terms[:WITNESS_DISPLAY_TERMS]))
    display = pretty(shown)
    if len(terms) > WITNESS_DISPLAY_TERMS:
        display += f" ... ({len(terms) - WITNESS_DISPLAY_TERMS} more terms)"
    return {"difference": poly_to_json(diff), "display": display, "terms": len(terms)}


def compare(lhs: MultiPoly, rhs: MultiPoly) -> Optional[Dict[str, Any]]:
    """None when the two sides are identical polynomials, else a witness."""
    if lhs == rhs:
        return None
    return poly_witness(lhs - rhs)
