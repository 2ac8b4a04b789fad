"""Lightweight residual reports shared by all verification checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    """Single residual measurement against a threshold.

    ``note`` carries informational flags (e.g. a skipped degenerate
    eigenvector) without failing the record.
    """

    name: str
    residual: float
    threshold: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f" ({self.note})" if self.note else ""
        return f"[{status}] {self.name}: residual={self.residual:.3e} <= {self.threshold:.3e}{extra}"


@dataclass(frozen=True)
class Report:
    """Immutable collection of check records."""

    records: tuple[CheckRecord, ...] = field(default_factory=tuple)

    @staticmethod
    def of(*records: CheckRecord) -> "Report":
        return Report(tuple(records))

    @staticmethod
    def merged(*reports: "Report") -> "Report":
        out: list[CheckRecord] = []
        for r in reports:
            out.extend(r.records)
        return Report(tuple(out))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    def worst(self) -> CheckRecord:
        """Record with the largest residual/threshold ratio (ties: largest residual)."""
        if not self.records:
            return CheckRecord("vacuous", 0.0, 1.0)
        return max(self.records, key=lambda r: (r.residual / r.threshold if r.threshold > 0 else math.inf, r.residual))

    def require(self, error_cls: type[Exception]) -> "Report":
        """Raise ``error_cls`` describing the worst record unless all pass."""
        if not self.passed:
            bad = self.worst()
            raise error_cls(f"{bad.name}: residual {bad.residual:.3e} exceeds {bad.threshold:.3e}")
        return self

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.records) or "(no checks)"
