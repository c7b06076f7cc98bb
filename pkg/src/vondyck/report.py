from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """Outcome of a verification: named checks plus a violation list."""

    title: str
    checks: list[Check] = field(default_factory=list)
    violations: list = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks) and not self.violations

    def __bool__(self):
        return self.ok

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            out.append(f"{status}  {self.title}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
        return out

    def __str__(self):
        return "\n".join(self.lines())


class IncompleteStoreError(ValueError):
    """Raised by verifications that need a closed (complete) element store."""
