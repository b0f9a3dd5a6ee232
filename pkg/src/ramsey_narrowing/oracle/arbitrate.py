"""Arbitration records: measured discrepancies vs. declared tolerances.

The closed forms inherit several under-specified constants from their
source (screening-constant convention, the 2-D finite-region denominator,
the cylinder-series prefactor, two inequivalent diffusion times).  The
oracles measure each discrepancy; this module only records the outcomes --
it never mutates an evaluator.  Informational items carry measurements
with no pass/fail semantics.
"""

import json
from dataclasses import dataclass, field

__all__ = ["ArbitrationItem", "ValidationReport", "arbitrate"]


@dataclass(frozen=True)
class ArbitrationItem:
    """One validation outcome: a named check with its measured numbers."""

    name: str
    passed: bool
    detail: str
    measured: dict = field(default_factory=dict)
    informational: bool = False

    def status(self) -> str:
        if self.informational:
            return "INFO"
        return "PASS" if self.passed else "FAIL"


@dataclass(frozen=True)
class ValidationReport:
    """Collected arbitration items with serialization helpers."""

    items: tuple

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items if not i.informational)

    def as_text(self) -> str:
        lines = []
        for item in self.items:
            lines.append(f"[{item.status():4s}] {item.name}: {item.detail}")
            for key, value in item.measured.items():
                lines.append(f"       {key} = {value:.6g}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def as_json(self) -> str:
        payload = {
            "items": [
                {
                    "name": i.name,
                    "status": i.status(),
                    "detail": i.detail,
                    "measured": i.measured,
                }
                for i in self.items
            ],
            "overall": "PASS" if self.passed else "FAIL",
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def arbitrate(items) -> ValidationReport:
    """Freeze a sequence of ArbitrationItems into a report."""
    return ValidationReport(items=tuple(items))
