"""Validation reports: named exact checks with pass/fail and details."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Type

from .errors import ValidationFailure


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        suffix = f" ({self.detail})" if self.detail and not self.passed else ""
        return f"{status}  {self.name}{suffix}"


@dataclass
class CheckReport:
    """An ordered list of named exact checks."""

    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                CheckResult(f"{prefix}{c.name}" if prefix else c.name, c.passed, c.detail)
            )

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def result(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def assert_ok(self, error_cls: Type[Exception] = ValidationFailure) -> "CheckReport":
        if not self.ok:
            lines = "; ".join(c.line() for c in self.failures)
            raise error_cls(f"{self.subject}: {lines}")
        return self

    def summary(self) -> str:
        head = f"{self.subject}: {'ok' if self.ok else 'FAILED'}"
        body = "\n".join("  " + c.line() for c in self.checks)
        return head + ("\n" + body if body else "")
