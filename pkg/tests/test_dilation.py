"""Tests for the explicit dilation: stage blocks, mutations, preservation and iteration."""

from __future__ import annotations

import pytest

from semigroup_lab.dilation import (
    DilatedIndex,
    DilationError,
    StageMutation,
    defect_basis,
    dilate_once,
    fair_schedule,
    history_lengths,
    iterate,
    root_stage,
    stage_defect,
    verify_compression,
    verify_elimination,
    verify_preservation,
    verify_restriction,
    verify_stage,
)
from semigroup_lab.systems import (
    RepFlags,
    check_adjoint_audit,
    covariance_sample,
    diagonal_system,
    left_regular_axb,
    preservation_fixture,
    tensor_defect,
)


def _failed(records, tag=None):
    return [r for r in records if not r.passed and (tag is None or r.tag == tag)]


def _make_defect_fixture(m2):
    return tensor_defect(diagonal_system(m2))


# ---------- indices ----------


class TestDilatedIndex:
    def test_history_must_increase(self):
        with pytest.raises(ValueError):
            DilatedIndex(0, (2, 1))
        with pytest.raises(ValueError):
            DilatedIndex(0, (1, 1))

    def test_order_by_history_length_first(self):
        assert DilatedIndex(5) < DilatedIndex(0, (1,))
        assert DilatedIndex(0, (1,)) < DilatedIndex(0, (2,))
        assert sorted([DilatedIndex(2), DilatedIndex(1, (1,)), DilatedIndex(1)]) == [
            DilatedIndex(1),
            DilatedIndex(2),
            DilatedIndex(1, (1,)),
        ]

    def test_str(self):
        assert str(DilatedIndex(3, (1, 2))) == "3@1.2"
        assert str(DilatedIndex(3)) == "3"


# ---------- one step on the shift ----------


class TestShiftStage:
    @pytest.fixture
    def stage(self, shift, nat):
        return dilate_once(shift, nat.element(1))

    @pytest.fixture
    def window(self, stage):
        return stage.rep.window(5)

    def test_one_new_vector(self, stage, window):
        assert stage.new_count(window) == 1
        assert DilatedIndex(((), 0), (1,)) in window

    def test_new_vector_maps_onto_old_origin(self, stage):
        v = stage.rep.V(stage.q).apply(DilatedIndex(((), 0), (1,)))
        assert v.support() == frozenset({DilatedIndex(((), 0))})

    def test_verify_stage(self, stage, window):
        sample = covariance_sample(stage.rep, element_bound=2)
        records = verify_stage(stage, sample, window, depth=5)
        tags = {r.tag for r in records}
        assert {"pi-unital", "isometry", "isometry-multiplicative", "right-covariance"} <= tags
        assert {"orthogonality-left", "inclusion-range", "projection-inclusion"} <= tags
        assert not _failed(records)
        assert all(r.module == "dilation-engine" for r in records)

    def test_restriction(self, stage, window):
        records = verify_restriction(stage, window)
        assert [r.tag for r in records] == ["restriction-old", "restriction-new"]
        assert not _failed(records)

    def test_compression(self, stage, window):
        sample = covariance_sample(stage.rep, element_bound=2)
        assert not _failed(verify_compression(stage, sample, window))

    def test_stage_defect_is_the_new_vector(self, stage, window):
        d = stage_defect(stage, stage.q)
        supported = [b for b in window if not d.apply(b).is_zero()]
        assert supported == [DilatedIndex(((), 0), (1,))]


# ---------- mutations ----------


class TestMutations:
    def test_dropping_cross_block_breaks_isometry(self, shift, nat):
        stage = dilate_once(shift, nat.element(1), StageMutation.DROP_CROSS_BLOCK)
        window = stage.rep.window(5)
        records = verify_stage(stage, covariance_sample(stage.rep, element_bound=2), window)
        assert _failed(records, "isometry")

    def test_unmutated_defect_fixture_passes(self, m2):
        stage = dilate_once(_make_defect_fixture(m2), m2.element(2))
        window = stage.rep.window(2, seed_count=3)
        assert stage.new_count(window) >= 1
        sample = covariance_sample(stage.rep, element_bound=1, projection_bound=2)
        assert not _failed(verify_stage(stage, sample, window))

    def test_frozen_lower_pi_breaks_right_covariance(self, m2):
        stage = dilate_once(_make_defect_fixture(m2), m2.element(2), StageMutation.FREEZE_LOWER_PI)
        window = stage.rep.window(2, seed_count=3)
        sample = covariance_sample(stage.rep, element_bound=1, projection_bound=2)
        bad = _failed(verify_stage(stage, sample, window), "right-covariance")
        assert any(r.inputs["p"] == "2" and r.inputs["a"] == "e_2" for r in bad)

    def test_frozen_lower_pi_keeps_compression(self, m2):
        stage = dilate_once(_make_defect_fixture(m2), m2.element(2), StageMutation.FREEZE_LOWER_PI)
        window = stage.rep.window(2, seed_count=3)
        sample = covariance_sample(stage.rep, element_bound=1, projection_bound=2)
        assert not _failed(verify_compression(stage, sample, window))


# ---------- ax+b tensor stage ----------

STAGE_CLAIMS = {
    "stage-homomorphism",
    "stage-isometric",
    "stage-right-covariance",
    "stage-orthogonality",
    "stage-inclusion",
    "stage-projection-inclusion",
}


class TestAxbTensorStage:
    @pytest.fixture
    def stage(self, m2, family2):
        return dilate_once(tensor_defect(left_regular_axb(m2, family2)), m2.element(2))

    @pytest.fixture
    def window(self, stage):
        return stage.rep.window(4, seed_count=8)

    def test_window_is_large_enough(self, stage, window):
        assert len(window) >= 100
        assert stage.new_count(window) >= 1

    def test_verify_stage_at_two(self, stage, window):
        sample = covariance_sample(stage.rep, element_bound=3, word_length=1, unitary_range=1, projection_bound=2)
        assert {p.as_int() for p, _ in sample} == {1, 2, 4, 8}
        records = verify_stage(stage, sample, window, depth=4)
        assert not _failed(records)
        assert {r.claim for r in records} == STAGE_CLAIMS
        assert all(r.window_size == len(window) for r in records)

    def test_adjoint_audit_covers_the_inclusion(self, stage, window, m2):
        records = check_adjoint_audit(
            stage.rep, window, elements=[m2.element(2)], module="dilation-engine", context={"stage": stage.number}
        )
        operators = {r.inputs["operator"] for r in records}
        assert (stage.T.name or repr(stage.T)) in operators
        assert {r.inputs["stage"] for r in records} == {"1"}
        assert not _failed(records)


# ---------- trivial stages ----------


class TestTrivialStage:
    def test_covariant_parent(self, axb2, m2):
        stage = dilate_once(axb2, m2.element(2))
        assert stage.trivial
        assert stage.rep is stage.parent.rep
        assert stage.new_count(stage.rep.window(1)) == 0

    def test_identity_q(self, shift, nat):
        stage = dilate_once(shift, nat.identity())
        assert stage.trivial
        sample = covariance_sample(stage.rep, element_bound=1)
        records = verify_stage(stage, sample, stage.rep.window(3))
        assert not any(r.tag.startswith("inclusion") for r in records)

    def test_foreign_q(self, shift, m2):
        with pytest.raises(DilationError):
            dilate_once(shift, m2.element(2))


# ---------- preservation ----------


class TestPreservation:
    @pytest.fixture
    def stage(self, m23):
        return dilate_once(preservation_fixture(), m23.element(2))

    def test_covariance_at_three_survives(self, stage, m23):
        window = stage.rep.window(2, seed_count=6)
        assert stage.new_count(window) >= 1
        records = verify_preservation(stage, m23.element(3), window)
        assert [r.tag for r in records] == ["preservation-precondition", "preservation"]
        assert not _failed(records)

    def test_precondition_fails_at_the_defect(self, stage, m23):
        window = stage.rep.window(2, seed_count=6)
        records = verify_preservation(stage, m23.element(2), window)
        assert _failed(records, "preservation-precondition")


# ---------- iteration ----------


class TestIterate:
    def test_five_stages_on_the_shift(self, shift, nat):
        stages = iterate(shift, [nat.element(1)], 5)
        assert [s.number for s in stages] == [0, 1, 2, 3, 4, 5]
        assert stages[0].parent is None
        windows = {s.number: s.rep.window(120) for s in stages}
        assert len(windows[5]) >= 100
        records = verify_elimination(stages, windows, depth=120)
        assert len(records) == 15
        assert not _failed(records)
        assert all(r.check == "iterate" for r in records)

    def test_elimination_is_rechecked_at_later_stages(self, shift, nat):
        stages = iterate(shift, [nat.element(1)], 3)
        windows = {s.number: s.rep.window(20) for s in stages}
        records = verify_elimination(stages, windows)
        pairs = {(r.inputs["stage"], r.inputs["at_stage"]) for r in records}
        assert pairs == {("1", "1"), ("1", "2"), ("1", "3"), ("2", "2"), ("2", "3"), ("3", "3")}
        by_pair = {(r.inputs["stage"], r.inputs["at_stage"]): r for r in records}
        # only vectors that existed before stage n are tested
        assert by_pair[("1", "3")].window_size == history_lengths(windows[3])[0]
        assert by_pair[("3", "3")].window_size == len(windows[3]) - 1
        assert not _failed(records)

    def test_each_stage_adds_one_copy(self, shift, nat):
        stages = iterate(shift, [nat.element(1)], 3)
        lengths = history_lengths(stages[-1].rep.window(20))
        assert lengths[0] >= 20
        assert [lengths[h] for h in (1, 2, 3)] == [1, 1, 1]

    def test_schedule_cycles(self, shift, nat):
        stages = iterate(shift, [nat.element(1), nat.element(2)], 4)
        assert [s.q.value for s in stages[1:]] == [1, 2, 1, 2]

    def test_rejects_bad_arguments(self, shift, nat):
        with pytest.raises(DilationError):
            iterate(shift, [nat.element(1)], 0)
        with pytest.raises(DilationError):
            iterate(shift, [], 2)

    def test_root_stage(self, shift):
        root = root_stage(shift)
        assert root.number == 0
        assert root.rep.seeds(1) == [DilatedIndex(((), 0))]


# ---------- schedules ----------


class TestSchedule:
    def test_fair_schedule_on_the_shift(self, shift, nat):
        assert [q.value for q in fair_schedule(shift, 2, shift.window(3))] == [1, 2]

    def test_covariant_fixture_has_nothing_to_schedule(self, axb2, axb2_window):
        assert fair_schedule(axb2, 1, axb2_window) == []

    def test_defect_basis_needs_diagonal_claim(self, m2):
        rep = _make_defect_fixture(m2)
        rep.flags = RepFlags(covariant=False, right_covariant=True, diagonal_defect=False)
        with pytest.raises(DilationError):
            defect_basis(rep, m2.element(2))

    def test_elements_with_defect(self, m2):
        rep = _make_defect_fixture(m2)
        window = rep.window(2, seed_count=3)
        assert [q.as_int() for q in fair_schedule(rep, 2, window)] == [2, 4]
