"""Check records, symbolic values and the JSON report document."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields, is_dataclass
from typing import Any

from . import __version__
from .algebra import NEG_INF, POS_INF


@dataclass(frozen=True, order=True)
class AtLeast:
    """A lower bound standing in for a value past the computed horizon."""

    value: int

    def __str__(self):
        return f">={self.value}"


def fmt(v) -> str:
    if isinstance(v, float) and math.isinf(v):
        return "-inf" if v < 0 else "+inf"
    return str(v)


def is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


@dataclass
class Check:
    """One verified relation ``lhs <relation> rhs``.

    ``certified`` is False when an input to the relation came from a
    heuristic (horizon window) rather than an exact certificate; a failed
    uncertified check counts as inconclusive, not as a violation.
    """

    name: str
    anchor: str
    lhs: Any
    rhs: Any
    relation: str
    passed: bool
    certified: bool = True
    note: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "pass"
        return "fail" if self.certified else "inconclusive"


_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "!=": lambda a, b: a != b,
}


def compare(name: str, anchor: str, lhs, relation: str, rhs, certified: bool = True, note: str = "") -> Check:
    """Build a check; a bound of the form AtLeast on either side is never certified."""
    if isinstance(lhs, AtLeast) or isinstance(rhs, AtLeast):
        return Check(name, anchor, lhs, rhs, relation, False, False, note or "value past horizon")
    ok = bool(_RELATIONS[relation](lhs, rhs))
    return Check(name, anchor, lhs, rhs, relation, ok, certified, note)


def summarize(checks: list[Check]) -> str:
    if any(c.status == "fail" for c in checks):
        return "fail"
    if any(c.status == "inconclusive" for c in checks):
        return "inconclusive"
    return "pass"


# --------------------------------------------------------------------------
# JSON encoding; -inf/+inf and AtLeast are tagged so the document round-trips


def to_jsonable(obj):
    if isinstance(obj, AtLeast):
        return {"at_least": obj.value}
    if isinstance(obj, float) and math.isinf(obj):
        return "-inf" if obj < 0 else "+inf"
    if isinstance(obj, Check):
        d = {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
        d["status"] = obj.status
        return d
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return to_jsonable(obj.to_dict())
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return obj.item()
    return obj


def from_jsonable(obj):
    if isinstance(obj, dict):
        if set(obj) == {"at_least"}:
            return AtLeast(obj["at_least"])
        return {k: from_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [from_jsonable(v) for v in obj]
    if obj == "-inf":
        return NEG_INF
    if obj == "+inf":
        return POS_INF
    return obj


@dataclass
class ReportDocument:
    command: str
    result: dict
    checks: list = field(default_factory=list)
    seed: int | None = None
    horizons: dict = field(default_factory=dict)
    tool: str = "regstab"
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "seed": self.seed,
            "horizons": to_jsonable(self.horizons),
            "result": to_jsonable(self.result),
            "checks": [to_jsonable(c) for c in self.checks],
            "verdict": summarize(self.checks),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        checks = []
        for c in d.get("checks", []):
            c = from_jsonable({k: v for k, v in c.items() if k != "status"})
            checks.append(Check(**c))
        return cls(
            command=d["command"],
            result=from_jsonable(d["result"]),
            checks=checks,
            seed=d.get("seed"),
            horizons=from_jsonable(d.get("horizons", {})),
            tool=d.get("tool", "regstab"),
            version=d.get("version", __version__),
        )
