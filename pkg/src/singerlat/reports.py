from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, ASSERTED = "pass", "fail", "paper-asserted"


@dataclass
class Check:
    name: str
    status: str
    anchor: str = "plumbing"
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def as_dict(self) -> dict[str, Any]:
        return {"name": self.name, "anchor": self.anchor, "status": self.status, "data": self.data}


@dataclass
class VerificationReport:
    """Ordered list of named checks plus free-form data."""

    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, ok: bool, anchor: str = "plumbing", **data) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, anchor, data))
        return ok

    def asserted(self, name: str, anchor: str, **data) -> None:
        self.checks.append(Check(name, ASSERTED, anchor, data))

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.anchor, c.data))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "status": PASS if self.passed else FAIL,
            "checks": [c.as_dict() for c in self.checks],
            "data": self.data,
        }

    def to_text(self) -> str:
        """Key-value text rendering, one check per line."""
        lines = [f"subject = {self.subject}", f"status = {PASS if self.passed else FAIL}"]
        for k, v in self.data.items():
            lines.append(f"data.{k} = {v}")
        for c in self.checks:
            extra = " ".join(f"{k}={v}" for k, v in c.data.items())
            lines.append(f"check.{c.name} = {c.status}" + (f"  [{c.anchor}] {extra}".rstrip()))
        return "\n".join(lines) + "\n"
