"""Report sections: each is a list of independent check jobs."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from ..dilation import (
    DilationStage,
    fair_schedule,
    iterate,
    verify_compression,
    verify_elimination,
    verify_preservation,
    verify_restriction,
    verify_stage,
)
from ..ideals import (
    AxbIdeal,
    ConstructibleFamily,
    Coset,
    ZIdeal,
    axb_inverse_translate,
    axb_translate,
    congruence_ideal_meet,
    congruence_ideal_members,
    congruence_ideal_preimage,
    congruence_ideal_translate,
    ideal_sum,
    intersect,
    inverse_translate,
    translate,
    validate_sum_assumption,
    verify_projection_comparison,
)
from ..progress import ProgressEmitter
from ..records import CheckRecord, make_record
from ..semigroups import MonoidDescriptor, MonoidKind, enumerate_elements
from ..systems import (
    AxbAlgebra,
    RepPair,
    TrivialAlgebra,
    UhfAlgebra,
    check_action,
    check_adjoint_audit,
    check_boundary_relations,
    check_c00_evaluation,
    check_covariance,
    check_cuntz_relations,
    check_defect,
    check_isometries,
    check_right_covariance,
    check_right_covariant_relations,
    check_trivial_covariance,
    check_universal_relations,
    covariance_sample,
    sample_c00,
    sample_words,
)
from .models import IdealTables, RunConfig, StageSummary

logger = logging.getLogger(__name__)

IDEAL_ORACLE_WINDOW = 500
IDEAL_ORACLE_MODULUS = 16
CONGRUENCE_ORACLE_LIMIT = 2000
IDEAL_TABLE_MODULUS = 8
AXB_TABLE_MODULUS = 4
CONGRUENCE_TABLE_LABEL = 15


@dataclass
class Job:
    name: str
    fn: Callable[[], list[CheckRecord]]


@dataclass
class Section:
    name: str
    jobs: list[Job] = field(default_factory=list)
    stages: list[StageSummary] = field(default_factory=list)
    schedule: list[str] = field(default_factory=list)
    ideals: IdealTables | None = None


# -- ideals ------------------------------------------------------------------


def _coset_oracle(family: ConstructibleFamily) -> list[CheckRecord]:
    """Coset operations against membership computed point by point on [-W, W]."""
    w = IDEAL_ORACLE_WINDOW
    points = range(-w, w + 1)
    moduli = [d for d in family.moduli if d <= IDEAL_ORACLE_MODULUS]
    cosets = [Coset(r, d) for d in moduli for r in range(d)]
    scalars = list(family.descriptor.generators) or [1]
    misses = {"translate": 0, "inverse-translate": 0, "intersect": 0}
    for c in cosets:
        for a in scalars:
            image = translate(a, c)
            misses["translate"] += sum(1 for y in points if (y % a == 0 and c.contains(y // a)) != image.contains(y))
            pre = inverse_translate(a, c)
            misses["inverse-translate"] += sum(1 for x in points if c.contains(a * x) != pre.contains(x))
    for c1, c2 in itertools.combinations(cosets, 2):
        meet = intersect(c1, c2)
        misses["intersect"] += sum(1 for x in points if (c1.contains(x) and c2.contains(x)) != meet.contains(x))
    inputs = {"monoid": family.descriptor.label, "window": w, "max_modulus": IDEAL_ORACLE_MODULUS}
    return [make_record("ideal-calculus", "coset-oracle", tag, n, claim="coset-operations", inputs=inputs) for tag, n in misses.items()]


def _projection_comparisons(config: RunConfig, family: ConstructibleFamily) -> list[CheckRecord]:
    elements = enumerate_elements(config.descriptor(), config.checks.element_bound)
    return [
        make_record(
            "ideal-calculus",
            "verify_projection_comparison",
            "projection-comparison",
            0 if verify_projection_comparison(p, q, family) else 1,
            claim="projection-comparison",
            inputs={"p": p, "q": q},
        )
        for p in elements
        for q in elements
    ]


def _congruence_oracle(config: RunConfig) -> list[CheckRecord]:
    bound = min(config.ideals.modulus_bound, 99)
    labels = list(range(1, bound + 1, 2))
    limit = CONGRUENCE_ORACLE_LIMIT
    misses = 0
    for a, b in itertools.combinations_with_replacement(labels, 2):
        meet = congruence_ideal_members(a, limit) & congruence_ideal_members(b, limit)
        if meet != congruence_ideal_members(congruence_ideal_meet(a, b), limit):
            misses += 1
    return [make_record("ideal-calculus", "congruence-meet", "congruence-ideal-meet", misses, claim="congruence-ideals", inputs={"bound": bound, "limit": limit})]


def _family_tables(family: ConstructibleFamily) -> IdealTables:
    moduli = [d for d in family.moduli if d <= IDEAL_TABLE_MODULUS]
    cosets = [Coset(r, d) for d in moduli for r in range(d)]
    scalars = list(family.descriptor.generators) or [1]
    tables = {
        "translate": [{"a": str(a), "coset": str(c), "result": str(translate(a, c))} for c in cosets for a in scalars],
        "inverse-translate": [
            {"a": str(a), "coset": str(c), "result": str(inverse_translate(a, c))} for c in cosets for a in scalars
        ],
        "intersect": [
            {"left": str(c1), "right": str(c2), "result": str(intersect(c1, c2))}
            for c1, c2 in itertools.combinations(cosets, 2)
        ],
        "ideal-sum": [
            {"left": str(ZIdeal(d1)), "right": str(ZIdeal(d2)), "result": str(ideal_sum(ZIdeal(d1), ZIdeal(d2)))}
            for d1, d2 in itertools.combinations_with_replacement(moduli, 2)
        ],
    }

    axb = MonoidDescriptor.axb(family.descriptor)
    elements = [axb.element((y, a)) for a in dict.fromkeys([1, *scalars]) for y in (0, 1)]
    ideals = [AxbIdeal.of(x, d) for d in moduli if d <= AXB_TABLE_MODULUS for x in range(d)]
    tables["axb-translate"] = [
        {"g": str(g), "ideal": str(j), "result": str(axb_translate(g, j))} for g in elements for j in ideals
    ]
    tables["axb-inverse-translate"] = [
        {"g": str(g), "ideal": str(j), "result": str(axb_inverse_translate(g, j))} for g in elements for j in ideals
    ]
    return IdealTables(
        monoid=family.descriptor.label,
        modulus_bound=family.bound,
        moduli=list(family.moduli),
        saturated=family.saturated,
        truncated=family.truncated,
        table_modulus=IDEAL_TABLE_MODULUS,
        tables=tables,
    )


def _congruence_tables(config: RunConfig) -> IdealTables:
    limit = min(config.ideals.modulus_bound, CONGRUENCE_TABLE_LABEL)
    labels = list(range(1, limit + 1, 2))
    generators = config.descriptor().generators
    return IdealTables(
        monoid=config.descriptor().label,
        modulus_bound=config.ideals.modulus_bound,
        table_modulus=limit,
        tables={
            "congruence-meet": [
                {"left": f"I{a}", "right": f"I{b}", "result": f"I{congruence_ideal_meet(a, b)}"}
                for a, b in itertools.combinations_with_replacement(labels, 2)
            ],
            "congruence-translate": [
                {"p": str(p), "ideal": f"I{a}", "result": f"I{congruence_ideal_translate(p, a)}"}
                for p in generators
                for a in labels
            ],
            "congruence-preimage": [
                {"p": str(p), "ideal": f"I{a}", "result": f"I{congruence_ideal_preimage(p, a)}"}
                for p in generators
                for a in labels
            ],
        },
    )


def ideal_tables(config: RunConfig, family: ConstructibleFamily | None) -> IdealTables | None:
    """Closure moduli plus translate, inverse-translate, intersect and sum tables."""
    if family is not None:
        return _family_tables(family)
    if config.descriptor().kind == MonoidKind.CONGRUENCE:
        return _congruence_tables(config)
    return None


def ideals_section(config: RunConfig, family: ConstructibleFamily | None) -> Section:
    section = Section("ideals", ideals=ideal_tables(config, family))
    if family is not None:
        section.jobs.append(Job("validate_sum_assumption", lambda: validate_sum_assumption(family)))
        section.jobs.append(Job("coset-oracle", lambda: _coset_oracle(family)))
        section.jobs.append(Job("verify_projection_comparison", lambda: _projection_comparisons(config, family)))
    if config.descriptor().kind == MonoidKind.CONGRUENCE:
        section.jobs.append(Job("congruence-meet", lambda: _congruence_oracle(config)))
    return section


# -- covariance --------------------------------------------------------------


def covariance_section(config: RunConfig, rep: RepPair, depth: int) -> Section:
    section = Section("covariance")
    c = config.checks
    window = rep.window(depth, config.window.seed_count)
    sample = covariance_sample(
        rep,
        element_bound=c.element_bound,
        word_length=c.word_length,
        unitary_range=c.unitary_range,
        projection_bound=c.projection_bound,
    )
    elements = enumerate_elements(rep.acting, c.element_bound)
    words = sample_words(rep.system, c.word_length, c.unitary_range, c.projection_bound)
    logger.info(f"[covariance] {rep.name}: window {len(window)}, sample {len(sample)}")

    section.jobs += [
        Job("audit_adjoint", lambda: check_adjoint_audit(rep, window, elements=elements, words=words, depth=depth)),
        Job("check_right_covariance", lambda: check_right_covariance(rep, sample, window, depth=depth)),
        Job("check_covariance", lambda: check_covariance(rep, sample, window, depth=depth)),
        Job("check_isometries", lambda: check_isometries(rep, elements, window)),
        Job("check_action", lambda: check_action(rep.system, words, elements)),
        Job("defect", lambda: check_defect(rep, elements, window, depth=depth)),
        Job("evaluate_c00", lambda: check_c00_evaluation(rep, sample_c00(rep, words[:4], elements), window, depth=depth)),
    ]
    if isinstance(rep.system, AxbAlgebra):
        relations = check_universal_relations if rep.flags.covariant else check_right_covariant_relations
        section.jobs.append(
            Job(
                relations.__name__,
                lambda: relations(
                    rep,
                    window,
                    elements=elements,
                    unitary_range=c.unitary_range,
                    projection_bound=c.projection_bound,
                    depth=depth,
                ),
            )
        )
        for p in rep.acting.generator_elements():
            section.jobs.append(
                Job(f"check_boundary_relations[{p}]", lambda p=p: check_boundary_relations(rep, p, window, depth=depth))
            )
    if isinstance(rep.system, UhfAlgebra):
        section.jobs.append(Job("cuntz_isometries", lambda: check_cuntz_relations(rep, window, depth=depth)))
    if isinstance(rep.system, TrivialAlgebra):
        section.jobs.append(Job("check_trivial_covariance", lambda: check_trivial_covariance(rep, elements, window)))
    return section


# -- dilation ----------------------------------------------------------------


def _claims(records: list[CheckRecord]) -> dict[str, bool]:
    out: dict[str, bool] = {}
    for r in records:
        out[r.tag] = out.get(r.tag, True) and r.passed
    return dict(sorted(out.items()))


def _preservation(stage: DilationStage, elements, window, depth: int) -> list[CheckRecord]:
    """Preservation at each p whose parent identity holds; other p are skipped."""
    out: list[CheckRecord] = []
    for p in elements:
        records = verify_preservation(stage, p, window, depth=depth)
        if records[0].passed:
            out.extend(records)
        else:
            logger.debug(f"[dilation] stage {stage.number}: parent not covariant at {p}, preservation skipped")
    return out


def dilation_section(
    config: RunConfig,
    rep: RepPair,
    depth: int,
    emitter: ProgressEmitter | None = None,
) -> Section:
    """Builds every stage up front (sequentially); verification jobs run per stage."""
    section = Section("dilation")
    c = config.checks
    schedule = config.schedule_elements()
    if not schedule:
        schedule = fair_schedule(rep, c.element_bound, rep.window(depth, config.window.seed_count))
        if not schedule:
            schedule = rep.acting.generator_elements()
    section.schedule = [str(q) for q in schedule]

    stages = iterate(rep, schedule, config.dilation.stages, config.dilation.mutation)
    windows: dict[int, list] = {}
    for stage in stages:
        windows[stage.number] = stage.rep.window(depth, config.window.seed_count)
        if stage.number and emitter is not None:
            emitter.stage_built(stage.number, str(stage.q), stage.new_count(windows[stage.number]), stage.trivial)
        logger.info(f"[dilation] {stage.describe()}: {stage.new_count(windows[stage.number])} new basis vectors on window")

    for stage in stages[1:]:
        window = windows[stage.number]
        sample = covariance_sample(
            stage.rep,
            element_bound=c.element_bound,
            word_length=c.word_length,
            unitary_range=c.unitary_range,
            projection_bound=c.projection_bound,
        )
        elements = enumerate_elements(rep.acting, c.element_bound)
        n = stage.number
        section.jobs += [
            Job(f"verify_stage[{n}]", lambda s=stage, w=window, smp=sample: verify_stage(s, smp, w, depth=depth)),
            Job(
                f"audit_adjoint[{n}]",
                lambda s=stage, w=window, el=elements: check_adjoint_audit(
                    s.rep, w, elements=el, depth=depth, module="dilation-engine", context={"stage": s.number}
                ),
            ),
            Job(f"verify_restriction[{n}]", lambda s=stage, w=window: verify_restriction(s, w, depth=depth)),
            Job(f"verify_compression[{n}]", lambda s=stage, w=window, smp=sample: verify_compression(s, smp, w, depth=depth)),
            Job(
                f"verify_preservation[{n}]",
                lambda s=stage, w=window, el=elements: _preservation(s, [p for p in el if not p.is_identity], w, depth),
            ),
        ]
    section.jobs.append(Job("iterate", lambda: verify_elimination(stages, windows, depth=depth)))
    section.stages = [
        StageSummary(
            stage=stage.number,
            q=str(stage.q),
            trivial=stage.trivial,
            new_basis_count_on_window=stage.new_count(windows[stage.number]),
            window_size=len(windows[stage.number]),
        )
        for stage in stages[1:]
    ]
    return section


def summarize_stages(section: Section, records: list[CheckRecord]) -> None:
    """Fill each StageSummary's claims, restriction and preservation results from the records."""
    by_stage: dict[str, list[CheckRecord]] = {}
    for r in records:
        by_stage.setdefault(r.inputs.get("stage", ""), []).append(r)
    for summary in section.stages:
        mine = by_stage.get(str(summary.stage), [])
        summary.claims = _claims([r for r in mine if r.check == "verify_stage"])
        summary.restriction_pass = all(r.passed for r in mine if r.check == "verify_restriction")
        summary.preservation_checks = {
            r.inputs["p"]: r.passed for r in mine if r.check == "verify_preservation" and r.tag == "preservation"
        }
