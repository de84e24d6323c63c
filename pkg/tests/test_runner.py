"""Tests for run documents, the LabRunner and report serialization."""

from __future__ import annotations

import csv
import io
import json
from io import StringIO

import pytest
from rich.console import Console

from semigroup_lab.config import Config, ConfigError
from semigroup_lab.progress import ProgressEmitter
from semigroup_lab.runner import (
    COMMAND_SECTIONS,
    LabRunner,
    RunReport,
    build_family,
    build_representation,
    canonical_hash,
    emit,
    load_config,
    locate,
    parse_config,
    to_csv,
    to_json,
)
from semigroup_lab.runner.sections import Job, Section
from semigroup_lab.semigroups import MonoidKind

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

SHIFT = """\
[semigroup]
kind = "nat-additive"

[representation]
kind = "trivial-nat"

[dilation]
stages = 3

[window]
depth = 8

[checks]
element_bound = 1
"""

CONGRUENCE = """\
[semigroup]
kind = "congruence-4-1"
generators = [5, 9, 13]

[representation]
kind = "diagonal"

[ideals]
modulus_bound = 31
"""


def _make_runner(text: str, emitter: ProgressEmitter | None = None) -> LabRunner:
    return LabRunner(
        parse_config(text),
        Config(workers=2),
        emitter=emitter,
        console=Console(file=StringIO()),
    )


def _diagnostics(text: str) -> list[str]:
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    return [str(d) for d in exc.value.diagnostics]


# ---------- parse_config ----------


class TestParseConfig:
    def test_defaults(self):
        config = parse_config('[semigroup]\nkind = "mult-monoid"\ngenerators = [2, 3]\n[representation]\nkind = "diagonal"\n')
        assert config.descriptor().label == "<2,3>"
        assert config.ideals.modulus_bound == 64
        assert config.checks.element_bound == 2
        assert config.dilation.stages == 1
        assert config.output.format == "json"
        assert config.window.depth == 3
        assert config.window_depth() == 3
        assert config.window_depth(override=5) == 5

    def test_document_depth_beats_override(self):
        assert parse_config(AXB2).window_depth(override=9) == 2

    def test_explicit_default_depth_beats_override(self):
        config = parse_config(SHIFT.replace("depth = 8", "depth = 3"))
        assert config.window_depth(override=9) == 3

    def test_with_window_depth_records_the_override(self):
        config = parse_config(CONGRUENCE).with_window_depth(6)
        assert config.window.depth == 6
        assert "depth = 6" in config.to_toml()
        assert parse_config(AXB2).with_window_depth(6).window.depth == 2

    def test_omitted_depth_is_written_back(self):
        text = parse_config(CONGRUENCE).to_toml()
        assert "[window]\ndepth = 3\n" in text
        assert parse_config(text).window.depth == 3

    def test_unknown_key_is_located(self):
        text = AXB2.replace('generators = [2]\n', 'generators = [2]\ncolour = "red"\n')
        assert _diagnostics(text) == ["line 4: unknown key semigroup.colour"]

    def test_unknown_section(self):
        text = AXB2 + "\n[extras]\nfoo = 1\n"
        assert any("unknown section [extras]" in d for d in _diagnostics(text))

    def test_missing_section(self):
        assert _diagnostics('[semigroup]\nkind = "nat-additive"\n') == ["missing required section [representation]"]

    def test_non_coprime_generators(self):
        text = AXB2.replace("generators = [2]", "generators = [2, 4]")
        (diag,) = _diagnostics(text)
        assert diag.startswith("line 1:")
        assert "not coprime" in diag

    def test_axb_is_not_an_acting_monoid(self):
        text = AXB2.replace('kind = "mult-monoid"', 'kind = "axb"')
        assert any("index set" in d for d in _diagnostics(text))

    def test_bad_value_points_at_key(self):
        text = AXB2.replace("modulus_bound = 16", "modulus_bound = 0")
        (diag,) = _diagnostics(text)
        assert diag.startswith("line 9:")
        assert "ideals.modulus_bound" in diag

    def test_malformed_toml(self):
        (diag,) = _diagnostics('[semigroup]\nkind = \n')
        assert diag.startswith("line 2:")
        assert "malformed document" in diag

    def test_representation_needs_matching_monoid(self):
        text = SHIFT.replace('kind = "nat-additive"', 'kind = "mult-monoid"\ngenerators = [2]')
        assert _diagnostics(text)

    def test_defect_generators_must_be_generators(self):
        text = AXB2.replace('kind = "left-regular-axb"', 'kind = "tensor-defect"\ndefect_generators = [3]')
        assert any("not semigroup generators" in d for d in _diagnostics(text))

    def test_schedule(self):
        config = parse_config(AXB2 + '\n[dilation]\nschedule = ["2", "4"]\nstages = 2\n')
        assert [q.as_int() for q in config.schedule_elements()] == [2, 4]

    def test_schedule_outside_monoid(self):
        assert _diagnostics(AXB2 + '\n[dilation]\nschedule = ["3"]\n')

    def test_to_toml_reads_back(self):
        config = parse_config(AXB2 + '\n[dilation]\nschedule = ["2"]\nmutation = "drop-cross-block"\n')
        assert parse_config(config.to_toml()) == config

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.toml")

    def test_locate(self):
        assert locate(AXB2, "checks", "unitary_range") == 16
        assert locate(AXB2, "checks") == 14
        assert locate(AXB2, "checks", "nope") == 14
        assert locate(AXB2, "nowhere") == 0


# ---------- fixtures ----------


class TestFixtures:
    def test_family_only_for_mult_monoids(self):
        assert build_family(parse_config(SHIFT)) is None
        family = build_family(parse_config(AXB2))
        assert family.moduli == (1, 2, 4, 8, 16)

    def test_build_each_kind(self):
        assert build_representation(parse_config(SHIFT)).name == "trivial-nat"
        assert "left-regular" in build_representation(parse_config(AXB2)).name
        tensor = parse_config(AXB2.replace('kind = "left-regular-axb"', 'kind = "tensor-defect"\nbase = "diagonal"'))
        assert build_representation(tensor).name.startswith("tensor-defect")
        uhf = parse_config(SHIFT.replace('kind = "trivial-nat"', 'kind = "cuntz-uhf"\nk = 3'))
        assert build_representation(uhf).system.k == 3


# ---------- LabRunner ----------


class TestLabRunner:
    @pytest.mark.asyncio
    async def test_check_on_left_regular_passes(self):
        report = await _make_runner(AXB2).run_async("check")
        assert report.passed
        assert report.summary.total == len(report.checks) > 0
        checks = {r.check for r in report.checks}
        assert {"check_covariance", "check_universal_relations", "evaluate_c00", "audit_adjoint"} <= checks
        assert "check_right_covariant_relations" not in checks
        assert any(r.check.startswith("check_boundary_relations") for r in report.checks)
        assert set(report.timing) == {"covariance", "total"}

    @pytest.mark.asyncio
    async def test_tensor_defect_uses_right_covariant_relations(self):
        report = await _make_runner(AXB2.replace("left-regular-axb", "tensor-defect")).run_async("check")
        checks = {r.check for r in report.checks}
        assert "check_right_covariant_relations" in checks
        assert "check_universal_relations" not in checks
        relations = [r for r in report.checks if r.check in {"check_right_covariant_relations", "audit_adjoint"}]
        assert relations
        assert all(r.passed for r in relations)

    @pytest.mark.asyncio
    async def test_records_are_sorted(self):
        report = await _make_runner(AXB2).run_async("check")
        keys = [r.sort_key() for r in report.checks]
        assert keys == sorted(keys)

    @pytest.mark.asyncio
    async def test_corrupted_action_fails(self):
        report = await _make_runner(AXB2.replace("left-regular-axb", "corrupted-action")).run_async("check")
        assert not report.passed
        assert report.summary.errors == 0
        failed = {r.check for r in report.checks if not r.passed}
        assert "check_action" in failed
        assert "check_right_covariance" not in failed

    @pytest.mark.asyncio
    async def test_ideals_command(self):
        report = await _make_runner(AXB2).run_async("ideals")
        assert report.passed
        assert report.representation == "left-regular-axb"
        assert {r.check for r in report.checks} == {
            "sum-closure",
            "intersection-closure",
            "preimage-closure",
            "coset-oracle",
            "verify_projection_comparison",
        }

    @pytest.mark.asyncio
    async def test_ideals_report_carries_tables(self):
        report = await _make_runner(AXB2).run_async("ideals")
        tables = report.ideals
        assert tables.monoid == "<2>"
        assert tables.moduli == [1, 2, 4, 8, 16]
        assert tables.saturated and tables.truncated
        assert set(tables.tables) == {
            "translate",
            "inverse-translate",
            "intersect",
            "ideal-sum",
            "axb-translate",
            "axb-inverse-translate",
        }
        assert len(tables.tables["translate"]) == 15
        assert len(tables.tables["intersect"]) == 105
        assert {"a": "2", "coset": "1+2Z", "result": "2+4Z"} in tables.tables["translate"]
        assert {"a": "2", "coset": "1+2Z", "result": "{}"} in tables.tables["inverse-translate"]
        assert {"left": "1+2Z", "right": "3+4Z", "result": "3+4Z"} in tables.tables["intersect"]
        assert {"left": "2Z", "right": "4Z", "result": "2Z"} in tables.tables["ideal-sum"]
        assert {"g": "(1,2)", "ideal": "(1+4Z)xI4", "result": "(3+8Z)xI8"} in tables.tables["axb-translate"]
        assert {"g": "(1,2)", "ideal": "(1+2Z)xI2", "result": "(0+1Z)xI1"} in tables.tables["axb-inverse-translate"]

    @pytest.mark.asyncio
    async def test_congruence_tables(self):
        report = await _make_runner(CONGRUENCE).run_async("ideals")
        tables = report.ideals.tables
        assert len(tables["congruence-meet"]) == 36
        assert {"left": "I3", "right": "I5", "result": "I15"} in tables["congruence-meet"]
        assert {"p": "5", "ideal": "I3", "result": "I15"} in tables["congruence-translate"]
        assert {"p": "5", "ideal": "I15", "result": "I3"} in tables["congruence-preimage"]

    @pytest.mark.asyncio
    async def test_no_tables_without_ideals(self):
        report = await _make_runner(SHIFT).run_async("ideals")
        assert report.ideals is None
        assert (await _make_runner(AXB2).run_async("check")).ideals is None

    @pytest.mark.asyncio
    async def test_congruence_ideals(self):
        report = await _make_runner(CONGRUENCE).run_async("ideals")
        (record,) = report.checks
        assert record.tag == "congruence-ideal-meet"
        assert record.passed
        assert record.inputs["bound"] == "31"

    @pytest.mark.asyncio
    async def test_dilate_on_the_shift(self):
        buf = StringIO()
        emitter = ProgressEmitter(enabled=True, _stream=buf)
        report = await _make_runner(SHIFT, emitter).run_async("dilate")
        assert report.passed
        assert report.schedule == ["1"]
        assert [s.stage for s in report.stages] == [1, 2, 3]
        for s in report.stages:
            assert s.new_basis_count_on_window == 1
            assert s.restriction_pass
            assert s.claims["isometry"]
        assert any(r.check == "iterate" for r in report.checks)
        audits = [r for r in report.checks if r.check == "audit_adjoint"]
        assert {r.module for r in audits} == {"dilation-engine"}
        assert {r.inputs["stage"] for r in audits} == {"1", "2", "3"}

        buf.seek(0)
        events = [json.loads(line)["event"] for line in buf if line.strip()]
        assert events[0] == "run_start"
        assert events.count("stage_built") == 3
        assert events[-1] == "run_complete"

    @pytest.mark.asyncio
    async def test_unknown_command(self):
        with pytest.raises(ValueError, match="unknown command"):
            await _make_runner(AXB2).run_async("explode")

    @pytest.mark.asyncio
    async def test_section_setup_failure_becomes_record(self, monkeypatch):
        def _boom(*args, **kwargs):
            raise RuntimeError("no window")

        monkeypatch.setattr("semigroup_lab.runner.orchestrator.covariance_section", _boom)
        report = await _make_runner(AXB2).run_async("check")
        (record,) = report.checks
        assert record.tag == "section-setup"
        assert record.error == "no window"
        assert report.summary.errors == 1

    @pytest.mark.asyncio
    async def test_job_failure_becomes_record(self, monkeypatch):
        def _raise():
            raise ArithmeticError("diverged")

        def _section(*args, **kwargs):
            return Section("covariance", jobs=[Job("ok", lambda: []), Job("bad", _raise)])

        monkeypatch.setattr("semigroup_lab.runner.orchestrator.covariance_section", _section)
        report = await _make_runner(AXB2).run_async("check")
        (record,) = report.checks
        assert record.check == "bad"
        assert record.tag == "job-error"
        assert not record.passed

    def test_report_runs_every_section(self):
        report = _make_runner(SHIFT).run("report")
        assert set(report.timing) == set(COMMAND_SECTIONS["report"]) | {"total"}
        modules = {r.module for r in report.checks}
        assert modules == {"covariant-systems", "dilation-engine"}

    def test_reruns_are_identical(self):
        first = _make_runner(SHIFT).run("dilate")
        second = _make_runner(SHIFT).run("dilate")
        assert canonical_hash(first) == canonical_hash(second)
        assert first.timing != {} and second.timing != {}


# ---------- emit ----------


class TestEmit:
    @pytest.fixture
    def empty(self):
        return RunReport(command="ideals", config=parse_config(SHIFT))

    def test_empty_json(self, empty):
        data = json.loads(to_json(empty))
        assert data["checks"] == []
        assert data["summary"]["total"] == 0
        assert data["ideals"] is None
        assert data["config"]["semigroup"]["kind"] == MonoidKind.NAT_ADDITIVE.value

    def test_json_without_timing(self, empty):
        assert "timing" not in json.loads(to_json(empty, timing=False))

    def test_empty_csv_is_header_only(self, empty):
        assert to_csv(empty).splitlines() == [
            "module,check,tag,claim,inputs,window_size,window_depth,residual,pass,form,error"
        ]

    def test_csv_has_one_row_per_check(self):
        report = _make_runner(AXB2).run("check")
        rows = list(csv.DictReader(io.StringIO(to_csv(report))))
        assert len(rows) == len(report.checks)
        assert {row["pass"] for row in rows} == {"true"}
        assert all(row["window_depth"] in {"", "2"} for row in rows)

    def test_json_uses_pass_alias(self):
        report = _make_runner(AXB2).run("check")
        data = json.loads(emit(report, "json"))
        assert all("pass" in r and "passed" not in r for r in data["checks"])

    def test_unknown_format(self, empty):
        with pytest.raises(ValueError):
            emit(empty, "xml")
