"""Verifier report shared by every identity check."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import IdentityViolation


@dataclass
class Report:
    identity: str
    n: int | None
    params: dict[str, Any]
    checked_count: int = 0
    status: str = "ok"
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def fail(self, **counterexample) -> Report:
        self.status = "violated"
        self.counterexample = counterexample
        return self

    def raise_for_status(self) -> Report:
        if not self.ok:
            raise IdentityViolation(self)
        return self

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        if out["counterexample"] is None:
            del out["counterexample"]
        if not out["details"]:
            del out["details"]
        return out
