"""SectionTracker: status and wall-clock timing of each report section."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass
class SectionRecord:
    name: str
    status: str = "pending"  # pending | running | completed | failed
    started_at: float = 0.0
    completed_at: float = 0.0
    duration_s: float = 0.0
    notes: str = ""


@dataclass
class SectionTracker:
    """Track the sections of one run.

    Timing uses ``time.perf_counter``; durations are the only numbers the
    report takes from here.
    """

    sections: list[SectionRecord] = field(default_factory=list)
    status: str = "pending"  # pending | running | completed | failed

    def define_sections(self, names: list[str]) -> None:
        self.sections = [SectionRecord(name=n) for n in names]

    def start(self) -> None:
        self.status = "running"

    def section_start(self, name: str) -> None:
        rec = self._find(name)
        if rec:
            rec.status = "running"
            rec.started_at = time.perf_counter()

    def section_complete(self, name: str, notes: str = "") -> None:
        rec = self._find(name)
        if rec:
            rec.status = "completed"
            rec.completed_at = time.perf_counter()
            rec.duration_s = round(rec.completed_at - rec.started_at, 3) if rec.started_at else 0.0
            if notes:
                rec.notes = notes

    def section_failed(self, name: str, error: str) -> None:
        rec = self._find(name)
        if rec:
            rec.status = "failed"
            rec.completed_at = time.perf_counter()
            rec.notes = error[:200]
            logger.warning(f"[tracker] section {name} failed: {rec.notes}")

    def complete(self) -> None:
        self.status = "failed" if any(s.status == "failed" for s in self.sections) else "completed"

    def durations(self) -> dict[str, float]:
        return {s.name: s.duration_s for s in self.sections}

    def next_section(self) -> str | None:
        """Name of the first section that has not completed, or None."""
        for s in self.sections:
            if s.status != "completed":
                return s.name
        return None

    def _find(self, name: str) -> SectionRecord | None:
        for s in self.sections:
            if s.name == name:
                return s
        return None
