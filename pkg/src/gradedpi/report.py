"""Structured verification outcomes and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

Verdict = bool | str  # True, False or "inconclusive"

INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    check: str
    verdict: Verdict
    witness: Any = None
    invariants: dict = field(default_factory=dict)
    truncation_degree: int | None = None
    notes: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict is True

    @property
    def passed(self) -> bool:
        return self.verdict is True

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "witness": jsonable(self.witness),
            "invariants": jsonable(self.invariants),
            "truncation_degree": self.truncation_degree,
            "notes": list(self.notes),
        }


def jsonable(obj):
    """Convert nested values to JSON-ready data; rationals become "p/q" strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, VerificationReport):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(v) for v in obj)
    return str(obj)


def coords(vec) -> list[str]:
    """Rational coordinate list in the serialized "p/q" form."""
    return [str(Fraction(v)) for v in vec]


def combine(verdicts) -> Verdict:
    """False dominates, then "inconclusive", then True."""
    verdicts = list(verdicts)
    if any(v is False for v in verdicts):
        return False
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return True


def dumps(data) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2, ensure_ascii=False)
