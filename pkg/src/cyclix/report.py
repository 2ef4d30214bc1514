"""Verification reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction


def residual_size(combo) -> Fraction:
    """Largest absolute coefficient of a linear combination (or a scalar)."""
    if isinstance(combo, dict):
        return max((abs(Fraction(v)) for v in combo.values()), default=Fraction(0))
    return abs(Fraction(combo))


@dataclass
class CheckResult:
    name: str
    tuples: int = 0
    failures: list = field(default_factory=list)
    max_residual: Fraction = Fraction(0)
    failed: int = 0
    # keep memory bounded on badly broken inputs
    keep: int = 50

    def record(self, witness, residual) -> None:
        self.tuples += 1
        size = residual_size(residual)
        if size:
            self.max_residual = max(self.max_residual, size)
            self.failed += 1
            if len(self.failures) < self.keep:
                self.failures.append((witness, residual))

    @property
    def passed(self) -> bool:
        return self.failed == 0


@dataclass
class VerificationReport:
    title: str
    checks: dict = field(default_factory=dict)

    def check(self, name: str) -> CheckResult:
        if name not in self.checks:
            self.checks[name] = CheckResult(name)
        return self.checks[name]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list:
        return [(c.name, w, r) for c in self.checks.values() for w, r in c.failures]

    def rows(self) -> list[tuple[str, int, Fraction]]:
        return [(c.name, c.tuples, c.max_residual) for c in self.checks.values()]

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for name, c in other.checks.items():
            self.checks[prefix + name] = replace(c, name=prefix + name)

    def __str__(self):
        lines = [self.title]
        for name, tuples, res in self.rows():
            status = "ok" if self.checks[name].passed else "FAIL"
            lines.append(f"  {name}: {tuples} tuples, max residual {res} [{status}]")
        return "\n".join(lines)
