"""NDJSON progress event emitter for machine-readable run output."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, TextIO


def _iso_now() -> str:
    """Return current UTC time in ISO 8601 format."""
    return datetime.now(timezone.utc).isoformat()


@dataclass
class ProgressEmitter:
    """Emits NDJSON progress events to a stream (default: stdout).

    When ``enabled=False``, all emit methods are no-ops.
    """

    enabled: bool = False
    _stream: TextIO = field(default_factory=lambda: sys.stdout)

    def _emit(self, event: str, **data: Any) -> None:
        if not self.enabled:
            return
        payload = {"event": event, "timestamp": _iso_now(), **data}
        self._stream.write(json.dumps(payload, ensure_ascii=False) + "\n")
        self._stream.flush()

    # -- Run lifecycle -------------------------------------------------------

    def run_start(self, command: str, representation: str, sections: list[str]) -> None:
        self._emit("run_start", command=command, representation=representation, sections=sections)

    def run_complete(self, total_duration_s: float, checks: int, failed: int) -> None:
        self._emit(
            "run_complete",
            total_duration_s=round(total_duration_s, 3),
            checks=checks,
            failed=failed,
            success=failed == 0,
        )

    # -- Section lifecycle ---------------------------------------------------

    def section_start(self, section: str, jobs: int) -> None:
        self._emit("section_start", section=section, jobs=jobs)

    def section_complete(self, section: str, duration_s: float, checks: int, failed: int) -> None:
        self._emit(
            "section_complete",
            section=section,
            duration_s=round(duration_s, 3),
            checks=checks,
            failed=failed,
        )

    # -- Check events --------------------------------------------------------

    def check_complete(self, section: str, check: str, records: int, failed: int) -> None:
        self._emit("check_complete", section=section, check=check, records=records, failed=failed)

    def stage_built(self, stage: int, q: str, new_basis_count: int, trivial: bool = False) -> None:
        self._emit("stage_built", stage=stage, q=q, new_basis_count=new_basis_count, trivial=trivial)

    # -- Errors --------------------------------------------------------------

    def error(self, message: str, section: str | None = None) -> None:
        data: dict[str, Any] = {"message": message}
        if section is not None:
            data["section"] = section
        self._emit("error", **data)
