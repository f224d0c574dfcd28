"""Machine-readable command reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .expr import format_var, print_expr
from .laurent import LaurentPoly

SCHEMA = 1


def to_jsonable(obj):
    """Plain JSON data; polynomials and variable keys become their text form."""
    if isinstance(obj, LaurentPoly):
        return print_expr(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return obj


def _key(k) -> str:
    if isinstance(k, tuple) and all(isinstance(a, int) for a in k):
        return format_var(k)
    return str(k)


@dataclass
class Report:
    command: str
    args: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def verdict(self, name: str, ok: bool, witness=None) -> bool:
        self.verdicts[name] = bool(ok)
        if not ok and witness is not None:
            self.witnesses[name] = witness
        return ok

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "args": to_jsonable(self.args),
            "ok": self.ok,
            "verdicts": self.verdicts,
            "witnesses": to_jsonable(self.witnesses),
            "data": to_jsonable(self.data),
        }
        if timing:
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), sort_keys=True, indent=2)
