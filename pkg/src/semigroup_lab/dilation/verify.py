"""Exact verification of dilation stages on windows."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

from ..operators import LinOp, combine, compose, compose_all, identity, zero
from ..records import CheckRecord
from ..semigroups import SemigroupElement, compose as mul
from ..systems import RecordSink, Sample, defect, word_str
from .stage import DilatedIndex, DilationStage

logger = logging.getLogger(__name__)

MODULE = "dilation-engine"


_STAGE_CLAIMS = {
    "pi-unital": "stage-homomorphism",
    "pi-adjoint": "stage-homomorphism",
    "pi-multiplicative": "stage-homomorphism",
    "isometry-identity": "stage-isometric",
    "isometry": "stage-isometric",
    "isometry-multiplicative": "stage-isometric",
    "right-covariance": "stage-right-covariance",
    "orthogonality-left": "stage-orthogonality",
    "orthogonality-right": "stage-orthogonality",
    "inclusion-isometry": "stage-inclusion",
    "inclusion-range": "stage-inclusion",
    "projection-inclusion": "stage-projection-inclusion",
}


def _sink(
    check: str,
    window: Sequence[DilatedIndex],
    depth: int | None,
    claim: str = "",
    claims: dict[str, str] | None = None,
) -> RecordSink:
    return RecordSink(check, window, depth, module=MODULE, claim=claim, claims=claims)


def stage_defect(stage: DilationStage, q: SemigroupElement) -> LinOp:
    """π_n(α_q(1)) − V_n(q)V_n(q)*, built from the operators (not from the diagonal predicate)."""
    rep = stage.rep
    vq = rep.V(q)
    return combine([(1, rep.pi(rep.system.alpha_unit(q))), (-1, compose(vq, vq.adjoint()))])


def verify_stage(
    stage: DilationStage,
    sample: Sequence[Sample],
    window: Sequence[DilatedIndex],
    *,
    elements: Sequence[SemigroupElement] | None = None,
    depth: int | None = None,
) -> list[CheckRecord]:
    """π_n a unital *-homomorphism, V_n an isometric representation, right covariance,
    orthogonality of V(q) and T, T an isometry onto the defect, and PT = T."""
    sink = _sink("verify_stage", window, depth, claims=_STAGE_CLAIMS)
    rep = stage.rep
    system = rep.system
    inputs = {"stage": stage.number, "q": stage.q}
    words = list(dict.fromkeys(w for _, w in sample))
    if elements is None:
        elements = sorted({p for p, _ in sample})

    # -- π_n ---------------------------------------------------------------
    sink.compare("pi-unital", lambda: rep.pi(system.unit()), identity, **inputs)
    for w1 in words:
        a = system.word(w1)
        sink.compare(
            "pi-adjoint",
            lambda: rep.pi(a).adjoint(),
            lambda: rep.pi(None if a is None else system.star(a)),
            a=word_str(w1),
            **inputs,
        )
        for w2 in words:
            sink.compare(
                "pi-multiplicative",
                lambda: compose(rep.pi_word(w1), rep.pi_word(w2)),
                lambda: rep.pi_word(w1 + w2),
                a=word_str(w1),
                b=word_str(w2),
                **inputs,
            )

    # -- V_n ---------------------------------------------------------------
    sink.compare("isometry-identity", lambda: rep.V(rep.acting.identity()), identity, **inputs)
    for p in elements:
        sink.compare("isometry", lambda: compose(rep.V(p).adjoint(), rep.V(p)), identity, p=p, **inputs)
        for r in elements:
            sink.compare(
                "isometry-multiplicative",
                lambda: compose(rep.V(p), rep.V(r)),
                lambda: rep.V(mul(p, r)),
                p=p,
                r=r,
                **inputs,
            )

    # -- right covariance --------------------------------------------------
    for p, word in sample:
        sink.compare(
            "right-covariance",
            lambda: compose(rep.V(p), rep.pi_word(word)),
            lambda: compose(rep.pi(system.alpha_word(p, word)), rep.V(p)),
            p=p,
            a=word_str(word),
            **inputs,
        )

    if stage.parent is None or stage.trivial:
        return sink.records

    # -- inclusion T -------------------------------------------------------
    parent = stage.parent.rep
    q = stage.q
    T = stage.T
    vq = stage.lift(parent.V(q))
    sink.compare("orthogonality-left", lambda: compose(vq.adjoint(), T), zero, **inputs)
    sink.compare("orthogonality-right", lambda: compose(T.adjoint(), vq), zero, **inputs)
    sink.compare("inclusion-isometry", lambda: compose(T.adjoint(), T), stage.new_projection, **inputs)
    sink.compare("inclusion-range", lambda: compose(T, T.adjoint()), lambda: stage.lift(defect(parent, q)), **inputs)
    alpha_q_unit = system.alpha_unit(q)
    for r in elements:
        P = system.alpha_inverse(r, alpha_q_unit)
        sink.compare(
            "projection-inclusion",
            lambda: compose(stage.lift(parent.pi(P)), T),
            lambda: T,
            r=r,
            **inputs,
        )
    logger.debug(f"[dilation] verified {stage.describe()}: {len(sink.records)} records")
    return sink.records


def verify_restriction(
    stage: DilationStage,
    window: Sequence[DilatedIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """The stage defect at q vanishes on the parent summand and is the identity on the new one."""
    sink = _sink("verify_restriction", window, depth, claim="restriction")
    inputs = {"stage": stage.number, "q": stage.q}
    d = stage_defect(stage, stage.q)
    sink.compare("restriction-old", lambda: compose(d, stage.old_projection()), zero, **inputs)
    sink.compare("restriction-new", lambda: compose(d, stage.new_projection()), stage.new_projection, **inputs)
    return sink.records


def verify_preservation(
    stage: DilationStage,
    p: SemigroupElement,
    window: Sequence[DilatedIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """If V(p)V(p)* = π(α_p(1)) holds for the parent, it holds for the stage.

    The parent identity is checked first, on the Old part of the window.
    """
    sink = _sink("verify_preservation", window, depth, claim="preservation")
    inputs = {"stage": stage.number, "q": stage.q, "p": p}
    parent = stage.parent.rep if stage.parent is not None else stage.rep
    old_window = [b for b in window if not stage.is_new(b)]
    pre = _sink("verify_preservation", old_window, depth, claim="preservation")
    pre.compare(
        "preservation-precondition",
        lambda: compose(parent.V(p), parent.V(p).adjoint()),
        lambda: parent.pi(parent.system.alpha_unit(p)),
        **inputs,
    )
    rep = stage.rep
    sink.compare(
        "preservation",
        lambda: compose(rep.V(p), rep.V(p).adjoint()),
        lambda: rep.pi(rep.system.alpha_unit(p)),
        **inputs,
    )
    return pre.records + sink.records


def verify_compression(
    stage: DilationStage,
    sample: Sequence[Sample],
    window: Sequence[DilatedIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """Compressing π_n(a) and V_n(p) to the parent summand gives back the parent operators."""
    sink = _sink("verify_compression", window, depth, claim="compression")
    if stage.parent is None:
        return sink.records
    parent = stage.parent.rep
    rep = stage.rep
    old = stage.old_projection()
    inputs = {"stage": stage.number, "q": stage.q}
    for word in dict.fromkeys(w for _, w in sample):
        sink.compare(
            "compression-pi",
            lambda: compose_all([old, rep.pi_word(word), old]),
            lambda: stage.lift(parent.pi_word(word)),
            a=word_str(word),
            **inputs,
        )
    for p in sorted({p for p, _ in sample}):
        sink.compare(
            "compression-isometry",
            lambda: compose_all([old, rep.V(p), old]),
            lambda: stage.lift(parent.V(p)),
            p=p,
            **inputs,
        )
    return sink.records


def verify_elimination(
    stages: Sequence[DilationStage],
    window_for: dict[int, Sequence[DilatedIndex]],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """The defect at q_n, re-evaluated at every stage m >= n, vanishes on the vectors that existed before stage n."""
    records: list[CheckRecord] = []
    for stage in stages:
        if stage.parent is None:
            continue
        n = stage.number
        for later in stages[n:]:
            before = [b for b in window_for[later.number] if all(h < n for h in b.history)]
            sink = _sink("iterate", before, depth, claim="monotone-elimination")
            sink.compare(
                "iterated-elimination",
                lambda: stage_defect(later, stage.q),
                zero,
                stage=n,
                at_stage=later.number,
                q=stage.q,
            )
            records.extend(sink.records)
    return records


def history_lengths(window: Iterable[DilatedIndex]) -> dict[int, int]:
    """Count of window vectors per history length."""
    out: dict[int, int] = {}
    for b in window:
        out[len(b.history)] = out.get(len(b.history), 0) + 1
    return dict(sorted(out.items()))
