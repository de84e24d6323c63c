"""Tests for ProgressEmitter NDJSON output."""

from __future__ import annotations

import json
from io import StringIO

from semigroup_lab.progress import ProgressEmitter


def _make_emitter() -> tuple[ProgressEmitter, StringIO]:
    """Create an enabled emitter writing to a StringIO buffer."""
    buf = StringIO()
    return ProgressEmitter(enabled=True, _stream=buf), buf


def _parse_events(buf: StringIO) -> list[dict]:
    """Parse all NDJSON lines from buffer."""
    buf.seek(0)
    return [json.loads(line) for line in buf if line.strip()]


class TestEmitterDisabled:
    def test_no_output_when_disabled(self):
        buf = StringIO()
        emitter = ProgressEmitter(enabled=False, _stream=buf)
        emitter.run_start("check", "trivial-nat", ["covariance"])
        emitter.section_start("covariance", 6)
        emitter.check_complete("covariance", "check_covariance", 10, 0)
        emitter.stage_built(1, "1", 1)
        emitter.section_complete("covariance", 1.0, 10, 0)
        emitter.error("something broke")
        emitter.run_complete(2.0, 10, 0)
        assert buf.getvalue() == ""


class TestEmitterOutput:
    def test_writes_valid_ndjson(self):
        emitter, buf = _make_emitter()
        emitter.run_start("report", "left-regular Z x| <2>", ["ideals", "covariance", "dilation"])
        emitter.section_start("ideals", 3)
        emitter.check_complete("ideals", "coset-oracle", 3, 0)
        emitter.section_complete("ideals", 0.5, 3, 0)
        emitter.run_complete(1.0, 3, 0)

        events = _parse_events(buf)
        assert [ev["event"] for ev in events] == [
            "run_start",
            "section_start",
            "check_complete",
            "section_complete",
            "run_complete",
        ]
        for ev in events:
            assert "timestamp" in ev

    def test_run_start_schema(self):
        emitter, buf = _make_emitter()
        emitter.run_start("dilate", "trivial-nat", ["dilation"])
        ev = _parse_events(buf)[0]
        assert ev["command"] == "dilate"
        assert ev["representation"] == "trivial-nat"
        assert ev["sections"] == ["dilation"]

    def test_run_complete_success_flag(self):
        emitter, buf = _make_emitter()
        emitter.run_complete(12.3456, 40, 2)
        ev = _parse_events(buf)[0]
        assert ev["total_duration_s"] == 12.346
        assert ev["failed"] == 2
        assert ev["success"] is False

    def test_section_complete_rounds_duration(self):
        emitter, buf = _make_emitter()
        emitter.section_complete("covariance", 0.12345, 10, 0)
        ev = _parse_events(buf)[0]
        assert ev["duration_s"] == 0.123
        assert ev["checks"] == 10

    def test_check_complete_schema(self):
        emitter, buf = _make_emitter()
        emitter.check_complete("dilation", "verify_stage[1]", 42, 1)
        ev = _parse_events(buf)[0]
        assert ev["section"] == "dilation"
        assert ev["check"] == "verify_stage[1]"
        assert ev["records"] == 42
        assert ev["failed"] == 1

    def test_stage_built_schema(self):
        emitter, buf = _make_emitter()
        emitter.stage_built(2, "(0,2)", 5, trivial=False)
        ev = _parse_events(buf)[0]
        assert ev["event"] == "stage_built"
        assert ev["stage"] == 2
        assert ev["new_basis_count"] == 5
        assert ev["trivial"] is False

    def test_error_with_and_without_section(self):
        emitter, buf = _make_emitter()
        emitter.error("boom")
        emitter.error("section failed", section="ideals")
        first, second = _parse_events(buf)
        assert "section" not in first
        assert second["section"] == "ideals"

    def test_unicode_is_not_escaped(self):
        emitter, buf = _make_emitter()
        emitter.error("ℤ ⋊ ⟨2⟩")
        assert "ℤ ⋊ ⟨2⟩" in buf.getvalue()
