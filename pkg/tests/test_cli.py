"""Tests for CLI commands."""

from __future__ import annotations

import json
from pathlib import Path
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from semigroup_lab.cli import main

SHIFT = """\
[semigroup]
kind = "nat-additive"

[representation]
kind = "trivial-nat"

[dilation]
stages = 2

[window]
depth = 6

[checks]
element_bound = 1
"""

AXB2 = """\
[semigroup]
kind = "mult-monoid"
generators = [2]

[representation]
kind = "left-regular-axb"

[ideals]
modulus_bound = 16

[window]
depth = 2

[checks]
element_bound = 1
unitary_range = 2
projection_bound = 4
"""


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("LAB_WORKERS", raising=False)
    monkeypatch.delenv("LAB_WINDOW_DEPTH", raising=False)
    return CliRunner()


def _write(tmp_path: Path, text: str, name: str = "run.toml") -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


# ---------- help ----------


def test_main_help(runner):
    """Main group should list every command."""
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for command in ("ideals", "check", "dilate", "report"):
        assert command in result.output


def test_report_help(runner):
    """report --help should show all options."""
    result = runner.invoke(main, ["report", "--help"])
    assert result.exit_code == 0
    for option in ("--format", "--out", "--json-progress", "--workers"):
        assert option in result.output


def test_missing_config_file(runner, tmp_path):
    result = runner.invoke(main, ["check", str(tmp_path / "absent.toml")])
    assert result.exit_code == 2


# ---------- commands ----------


def test_check_passes(runner, tmp_path):
    """A covariant fixture exits 0 and prints the JSON report."""
    result = runner.invoke(main, ["check", _write(tmp_path, AXB2), "-w", "2"])
    assert result.exit_code == 0, result.output
    assert '"summary"' in result.output
    assert "check_covariance" in result.output


def test_check_fails_on_corrupted_action(runner, tmp_path):
    """Failing relations exit 1."""
    path = _write(tmp_path, AXB2.replace("left-regular-axb", "corrupted-action"))
    result = runner.invoke(main, ["check", path])
    assert result.exit_code == 1
    assert "checks failed" in result.output


def test_dilate(runner, tmp_path):
    result = runner.invoke(main, ["dilate", _write(tmp_path, SHIFT)])
    assert result.exit_code == 0, result.output
    assert '"stages"' in result.output


def test_report_csv_to_file(runner, tmp_path):
    """report --format csv --out writes the CSV rows to the file."""
    out = tmp_path / "report.csv"
    result = runner.invoke(main, ["report", _write(tmp_path, AXB2), "--format", "csv", "--out", str(out)])
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "module,check,tag,claim,inputs,window_size,window_depth,residual,pass,form,error"
    assert len(lines) > 1
    assert "Report written:" in result.output


def test_report_uses_output_path(runner, tmp_path):
    """Without --out, report writes to output.path from the run document."""
    target = tmp_path / "from-config.json"
    text = AXB2 + f'\n[output]\nformat = "json"\npath = "{target.as_posix()}"\n'
    result = runner.invoke(main, ["report", _write(tmp_path, text)])
    assert result.exit_code == 0, result.output
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["command"] == "report"
    assert data["summary"]["failed"] == 0
    assert data["ideals"]["moduli"] == [1, 2, 4, 8, 16]
    assert data["config"]["window"]["depth"] == 2


def test_ideals_prints_tables(runner, tmp_path):
    """lab ideals prints the closure and the operation tables."""
    result = runner.invoke(main, ["ideals", _write(tmp_path, AXB2)])
    assert result.exit_code == 0, result.output
    for table in ('"translate"', '"inverse-translate"', '"intersect"', '"ideal-sum"', '"axb-translate"'):
        assert table in result.output
    assert '"moduli": [' in result.output
    assert '"result": "(3+8Z)xI8"' in result.output


def test_env_depth_fills_omitted_depth(runner, tmp_path, monkeypatch):
    """LAB_WINDOW_DEPTH applies when the document has no depth, and the report records it."""
    monkeypatch.setenv("LAB_WINDOW_DEPTH", "2")
    target = tmp_path / "depth.json"
    text = AXB2.replace("[window]\ndepth = 2\n", "") + f'\n[output]\npath = "{target.as_posix()}"\n'
    result = runner.invoke(main, ["report", _write(tmp_path, text)])
    assert result.exit_code == 0, result.output
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["config"]["window"]["depth"] == 2
    assert {r["window_depth"] for r in data["checks"]} <= {None, 2}


def test_json_progress_emits_events(runner, tmp_path):
    """--json-progress writes NDJSON events and no report to stdout."""
    result = runner.invoke(main, ["dilate", _write(tmp_path, SHIFT), "--json-progress"])
    assert result.exit_code == 0, result.output
    events = [json.loads(line) for line in result.output.splitlines() if line.startswith('{"event"')]
    names = [ev["event"] for ev in events]
    assert names[0] == "run_start"
    assert "stage_built" in names
    assert names[-1] == "run_complete"
    assert '"checks": [' not in result.output


# ---------- errors ----------


def test_config_error_is_located(runner, tmp_path):
    """An unknown key should be reported with its line."""
    path = _write(tmp_path, AXB2.replace("generators = [2]\n", "generators = [2]\nspeed = 3\n"))
    result = runner.invoke(main, ["check", path])
    assert result.exit_code == 1
    assert "Config error:" in result.output
    assert "line 4: unknown key semigroup.speed" in result.output


def test_env_config_error(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("LAB_WORKERS", "0")
    result = runner.invoke(main, ["check", _write(tmp_path, AXB2)])
    assert result.exit_code == 1
    assert "Config error:" in result.output


def test_keyboard_interrupt(runner, tmp_path):
    with patch("semigroup_lab.cli.LabRunner.run", side_effect=KeyboardInterrupt):
        result = runner.invoke(main, ["check", _write(tmp_path, AXB2)])
    assert result.exit_code == 130
    assert "Cancelled." in result.output


def test_unexpected_error(runner, tmp_path):
    with patch("semigroup_lab.cli.LabRunner.run", side_effect=RuntimeError("boom")):
        result = runner.invoke(main, ["check", _write(tmp_path, AXB2)])
    assert result.exit_code == 1
    assert "Error:" in result.output
    assert "boom" in result.output
