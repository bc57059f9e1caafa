"""Verification reports shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    cases: int = 0
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"\t{self.witness}" if self.witness else ""
        return f"{status}\t{self.name}\t{self.cases}{tail}"


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, name: str, passed: bool, cases: int = 0, witness: str = "") -> Check:
        check = Check(name, passed, cases, witness)
        self.checks.append(check)
        return check

    def extend(self, other: Report, prefix: str = "") -> Report:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.cases, c.witness))
        return self

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def failed_names(self) -> set[str]:
        return {c.name for c in self.checks if not c.passed}

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def render(self) -> str:
        lines = [f"# {self.title}"]
        lines.extend(c.line() for c in self.checks)
        return "\n".join(lines) + "\n"


class Sweep:
    """Accumulates one named check over many cases, keeping the first witness."""

    def __init__(self, report: Report, name: str):
        self.report = report
        self.name = name
        self.cases = 0
        self.witness: str | None = None

    def __enter__(self) -> Sweep:
        return self

    def record(self, ok: bool, witness: str | None = None) -> bool:
        self.cases += 1
        if not ok and self.witness is None:
            self.witness = witness or "unspecified"
        return ok

    def fail(self, witness: str) -> None:
        self.record(False, witness)

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def __exit__(self, *exc) -> None:
        if exc[0] is None:
            self.report.add(self.name, self.witness is None, self.cases, self.witness or "")
