"""Result objects for verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckRecord:
    """One verified instance; ``payload`` holds the instance description and computed values."""

    check: str
    passed: bool
    payload: Dict[str, Any] = field(default_factory=dict)
    error: str = ""

    def to_json(self) -> Dict[str, Any]:
        data = {"check": self.check, **self.payload, "passed": self.passed}
        if self.error:
            data["error"] = self.error
        return data


class CheckResult:
    """Result of one verification suite."""

    def __init__(self, name: str, records: List[CheckRecord] | None = None):
        self.name = name
        self.records: List[CheckRecord] = list(records or [])
        self.warnings: List[str] = []

    def add(self, passed: bool, error: str = "", **payload: Any) -> CheckRecord:
        record = CheckRecord(check=self.name, passed=bool(passed), payload=payload, error=error)
        self.records.append(record)
        return record

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def errors(self) -> List[str]:
        return [record.error or f"{self.name} failed: {record.payload}" for record in self.records if not record.passed]

    @property
    def failures(self) -> int:
        return sum(1 for record in self.records if not record.passed)

    def __len__(self) -> int:
        return len(self.records)

    def __repr__(self) -> str:
        status = "PASSED" if self.passed else "FAILED"
        msg = f"Check {self.name}: {status} ({len(self.records)} instances)"
        if self.failures:
            msg += f" ({self.failures} errors)"
        if self.warnings:
            msg += f" ({len(self.warnings)} warnings)"
        return msg
