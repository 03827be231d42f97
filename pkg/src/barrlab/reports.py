"""Structured pass/fail reports for exhaustive law checks.

Every check appends results in canonical order, so two runs over the same
inputs produce identical reports and the first counterexample recorded is
the minimal one in enumeration order.  Instances whose enumeration would
exceed the blow-up guard are recorded as skipped rather than silently
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"


@dataclass(frozen=True)
class LawCheck:
    law: str
    instance: str
    status: str
    detail: str = ""
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"law": self.law, "instance": self.instance, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class LawReport:
    subject: str
    checks: list = field(default_factory=list)

    def record(self, law: str, instance: str, ok: bool, detail: str = "",
               counterexample: Optional[dict] = None) -> None:
        status = PASS if ok else FAIL
        self.checks.append(LawCheck(law, instance, status, detail,
                                    None if ok else counterexample))

    def skip(self, law: str, instance: str, reason: str) -> None:
        self.checks.append(LawCheck(law, instance, SKIP, reason))

    def merge(self, other: "LawReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if c.status == FAIL]

    def skipped(self) -> list[LawCheck]:
        return [c for c in self.checks if c.status == SKIP]

    def first_failure(self) -> Optional[LawCheck]:
        for c in self.checks:
            if c.status == FAIL:
                return c
        return None

    def raise_if_failed(self) -> "LawReport":
        if not self.passed:
            from .errors import CounterexampleFound

            raise CounterexampleFound(self)
        return self

    def by_law(self) -> dict:
        """Aggregate verdict per law: fail > skipped > pass."""
        out: dict = {}
        rank = {PASS: 0, SKIP: 1, FAIL: 2}
        for c in self.checks:
            prev = out.get(c.law)
            if prev is None or rank[c.status] > rank[prev]:
                out[c.law] = c.status
        return out

    def summary(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for law, status in self.by_law().items():
            lines.append(f"  {law:<28} {status}")
        for c in self.failures():
            lines.append(f"  counterexample [{c.law} @ {c.instance}]: {c.counterexample}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
