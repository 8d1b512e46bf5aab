"""Pass/fail check lists with byte-stable serialization."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    instance_digest: str = ""
    # wall-clock seconds per phase; excluded from the stable serialization
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "instance_digest": self.instance_digest,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"digest {self.instance_digest}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    """Short stable content hash used to name instances and reports."""
    return hashlib.sha256(text.encode()).hexdigest()[:16]
