"""
Machine-readable run reports

Field names are stable; identical inputs and budgets give byte-identical
JSON apart from `timestamp`. Wall-clock `elapsed_ms` values are written as
null unless the report is built with timings on.
"""

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from core.constants import VERSION, EXIT_OK, EXIT_HARD_FAILURE, EXIT_UNCERTIFIED
from core.logging_setup import logger


SUCCESS_VERDICTS = ("Certified", "Equal", "Terminal", "Commutes", "Normalized")
ERROR_VERDICT = "Error"


@dataclass
class TaskRecord:
    task: str
    kind: str
    verdict: str
    witness: object = None
    trace: object = None
    budget: dict = field(default_factory=dict)
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    @property
    def succeeded(self):
        return self.verdict in SUCCESS_VERDICTS

    def to_dict(self, timings=True):
        return {
            "task": self.task,
            "kind": self.kind,
            "verdict": self.verdict,
            "witness": self.witness,
            "trace": self.trace,
            "budget": self.budget,
            "elapsed_ms": self.elapsed_ms if timings else None,
            "details": self.details,
        }


@dataclass
class Report:
    presentation: str
    records: list = field(default_factory=list)
    budget: dict = field(default_factory=dict)
    timings: bool = False
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    @property
    def exit_code(self):
        if any(r.verdict == ERROR_VERDICT for r in self.records):
            return EXIT_HARD_FAILURE
        if all(r.succeeded for r in self.records):
            return EXIT_OK
        return EXIT_UNCERTIFIED

    def to_dict(self):
        return {
            "version": VERSION,
            "presentation": self.presentation,
            "timestamp": self.timestamp,
            "budget": self.budget,
            "exit_code": self.exit_code,
            "tasks": [r.to_dict(self.timings) for r in self.records],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def save_report(report, path):
    """Write the JSON report to path"""
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(report.to_json())
        logger.info(f"Wrote JSON report to {path}")
    except OSError as e:
        logger.error(f"Failed to write report {path}: {e}")
        raise


def strip_volatile(data):
    """Copy of a report dict without timestamp and elapsed_ms (for comparisons)"""
    data = dict(data)
    data.pop("timestamp", None)
    data["tasks"] = [{k: v for k, v in t.items() if k != "elapsed_ms"} for t in data["tasks"]]
    return data
