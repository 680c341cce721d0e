"""Record type for a checked identity: both sides and the verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: Any
    rhs: Any
    ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ok", _plain(self.lhs) == _plain(self.rhs))

    def as_dict(self) -> dict:
        return {"identity": self.name, "lhs": _plain(self.lhs), "rhs": _plain(self.rhs), "ok": self.ok}


def _plain(v):
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def all_ok(checks) -> bool:
    return all(c.ok for c in checks)


def failures(checks) -> list[IdentityCheck]:
    return [c for c in checks if not c.ok]
