"""Relation checks for representation pairs.

Every check returns CheckRecords; a failed relation is a record with a
nonzero residual, never an exception.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

from ..operators import (
    BasisIndex,
    LinOp,
    OperatorAuditError,
    audit_adjoint,
    combine,
    compose,
    compose_all,
    diagonal,
    identity,
    is_isometry_on_window,
    window_residual,
    zero,
)
from ..records import CheckRecord, error_record, make_record
from ..semigroups import SemigroupElement, compose as mul, enumerate_elements
from .algebra import (
    AxbAlgebra,
    DynSystem,
    MatrixUnit,
    Projection,
    Scalar,
    TrivialAlgebra,
    Unitary,
    Word,
    sample_words,
    word_str,
)
from .representations import RepPair, cuntz_isometries

logger = logging.getLogger(__name__)

MODULE = "covariant-systems"

Sample = tuple[SemigroupElement, Word]


class UnsupportedRepresentationError(Exception):
    """The representation lacks the structure an operation needs (e.g. a diagonal defect)."""


class EvaluationDivergenceError(Exception):
    """A column could not be evaluated at a basis index."""

    def __init__(self, index: BasisIndex, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"evaluation failed at basis index {index!s}: {cause}")


def residual_on(lhs: LinOp, rhs: LinOp, window: Sequence[BasisIndex]) -> Fraction:
    """window_residual, with per-column failures raised as EvaluationDivergenceError."""
    worst = Fraction(0)
    for b in window:
        try:
            r = window_residual(lhs, rhs, (b,))
        except (ArithmeticError, ValueError, TypeError, KeyError) as e:
            raise EvaluationDivergenceError(b, e) from e
        worst = max(worst, r)
    return worst


class RecordSink:
    """Collects records for one (module, check), turning evaluation errors into error records.

    ``claim`` is the default claim of every record; ``claims`` overrides it per tag.
    """

    def __init__(
        self,
        check: str,
        window: Sequence[BasisIndex] = (),
        depth: int | None = None,
        module: str = MODULE,
        *,
        claim: str = "",
        claims: dict[str, str] | None = None,
    ):
        self.module = module
        self.check = check
        self.window = list(window)
        self.depth = depth
        self.claim = claim
        self.claims = claims or {}
        self.records: list[CheckRecord] = []

    def claim_for(self, tag: str) -> str:
        return self.claims.get(tag, self.claim)

    def compare(self, tag: str, lhs: Callable[[], LinOp], rhs: Callable[[], LinOp], form: str | None = None, **inputs) -> CheckRecord:
        try:
            residual = residual_on(lhs(), rhs(), self.window)
        except (EvaluationDivergenceError, OperatorAuditError, UnsupportedRepresentationError, ValueError) as e:
            logger.debug(f"[{self.check}] {tag} {inputs}: {e}")
            rec = self.error(tag, e, **inputs)
        else:
            rec = make_record(
                self.module,
                self.check,
                tag,
                residual,
                claim=self.claim_for(tag),
                inputs=inputs,
                window_size=len(self.window),
                window_depth=self.depth,
                form=form,
            )
        self.records.append(rec)
        return rec

    def symbolic(self, tag: str, lhs, rhs, **inputs) -> CheckRecord:
        """Equality of two algebra terms; residual 1 on mismatch."""
        rec = make_record(self.module, self.check, tag, 0 if lhs == rhs else 1, claim=self.claim_for(tag), inputs=inputs)
        self.records.append(rec)
        return rec

    def error(self, tag: str, e: Exception | str, **inputs) -> CheckRecord:
        return error_record(self.module, self.check, tag, e, claim=self.claim_for(tag), inputs=inputs, window_size=len(self.window))

    def add(self, rec: CheckRecord) -> None:
        self.records.append(rec)


def covariance_sample(
    rep: RepPair,
    *,
    element_bound: int = 2,
    word_length: int = 1,
    unitary_range: int = 4,
    projection_bound: int = 16,
) -> list[Sample]:
    """Pairs (p, generator word): p of word length ≤ element_bound, words over the sampled generators."""
    elements = enumerate_elements(rep.acting, element_bound)
    words = sample_words(rep.system, word_length, unitary_range, projection_bound)
    return [(p, w) for p in elements for w in words]


def _range_projection(rep: RepPair, p: SemigroupElement) -> LinOp:
    v = rep.V(p)
    return compose(v, v.adjoint())


# -- Covariance ---------------------------------------------------------------

_COVARIANCE_CLAIMS = {"range-absorption": "projection-inequality", "projection-inequality": "projection-inequality"}


def check_right_covariance(
    rep: RepPair,
    sample: Iterable[Sample],
    window: Sequence[BasisIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """V(p)π(a) = π(α_p(a))V(p), plus V(p)*π(a) = π(α_{p⁻¹}(a))V(p)* when a commutes with α_p(1)."""
    sink = RecordSink("check_right_covariance", window, depth, claim="right-covariance")
    system = rep.system
    for p, word in sample:
        inputs = {"p": p, "a": word_str(word)}
        sink.compare(
            "right-covariance",
            lambda: compose(rep.V(p), rep.pi_word(word)),
            lambda: compose(rep.pi(system.alpha_word(p, word)), rep.V(p)),
            **inputs,
        )
        a = system.word(word)
        if a is not None and system.commutes_with_range(p, a):
            sink.compare(
                "right-covariance-adjoint",
                lambda: compose(rep.V(p).adjoint(), rep.pi(a)),
                lambda: compose(rep.pi(system.alpha_inverse(p, a)), rep.V(p).adjoint()),
                **inputs,
            )
    logger.debug(f"[{rep.name}] right covariance: {len(sink.records)} records, cache {rep.cache_size()}")
    return sink.records


def check_covariance(
    rep: RepPair,
    sample: Iterable[Sample],
    window: Sequence[BasisIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """V(p)π(a)V(p)* = π(α_p(a)) and V(p)V(p)* = π(α_p(1)), with the inequality and absorption forms."""
    sink = RecordSink("check_covariance", window, depth, claim="covariance", claims=_COVARIANCE_CLAIMS)
    system = rep.system
    sample = list(sample)
    for p, word in sample:
        inputs = {"p": p, "a": word_str(word)}
        sink.compare(
            "covariance",
            lambda: compose_all([rep.V(p), rep.pi_word(word), rep.V(p).adjoint()]),
            lambda: rep.pi(system.alpha_word(p, word)),
            **inputs,
        )
        sink.compare(
            "range-absorption",
            lambda: compose(rep.pi_word(word), rep.V(p)),
            lambda: compose(rep.pi(system.product(system.word(word), system.alpha_unit(p))), rep.V(p)),
            **inputs,
        )
    for p in sorted({p for p, _ in sample}):
        sink.compare(
            "range-projection",
            lambda: _range_projection(rep, p),
            lambda: rep.pi(system.alpha_unit(p)),
            p=p,
        )
        sink.compare(
            "projection-inequality",
            lambda: compose(rep.pi(system.alpha_unit(p)), _range_projection(rep, p)),
            lambda: _range_projection(rep, p),
            p=p,
        )
    return sink.records


# -- Defect -------------------------------------------------------------------


def defect_predicate(rep: RepPair, q: SemigroupElement) -> Callable[[BasisIndex], bool]:
    """b lies in the defect at q iff π(α_q(1))e_b = e_b and V(q)*e_b = 0."""
    if not rep.flags.diagonal_defect:
        raise UnsupportedRepresentationError(f"{rep.name} does not claim a diagonal defect")
    p_range = rep.pi(rep.system.alpha_unit(q))
    vq = rep.V(q)
    if not p_range.is_diagonal_01:
        raise UnsupportedRepresentationError(f"pi(alpha_{q}(1)) is not a diagonal projection on {rep.name}")
    if not vq.is_monomial:
        raise UnsupportedRepresentationError(f"V({q}) is not monomial on {rep.name}")

    def _in_defect(b: BasisIndex) -> bool:
        return not p_range.apply(b).is_zero() and vq.adjoint_apply(b).is_zero()

    return _in_defect


def defect(rep: RepPair, q: SemigroupElement, window: Sequence[BasisIndex] | None = None) -> LinOp:
    """π(α_q(1)) − V(q)V(q)*, returned as a 0/1 diagonal.

    With a window, the diagonal is compared against the operator difference
    and a mismatch raises UnsupportedRepresentationError.
    """
    if q.is_identity:
        return zero(f"D({q})")
    op = diagonal(defect_predicate(rep, q), name=f"D({q})")
    if window is not None:
        direct = combine([(1, rep.pi(rep.system.alpha_unit(q))), (-1, _range_projection(rep, q))])
        gap = window_residual(op, direct, window)
        if gap:
            raise UnsupportedRepresentationError(f"defect at {q} is not diagonal on the window (residual {gap})")
    return op


def check_defect(
    rep: RepPair,
    elements: Iterable[SemigroupElement],
    window: Sequence[BasisIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """The defect at each q is the 0/1 diagonal of its predicate; ``trace`` counts it on the window."""
    sink = RecordSink("defect", window, depth, claim="defect-diagonal")
    for q in elements:
        if q.is_identity:
            continue
        try:
            pred = defect_predicate(rep, q)
        except UnsupportedRepresentationError as e:
            sink.add(sink.error("defect-diagonal", e, q=q))
            continue
        trace = sum(1 for b in sink.window if pred(b))
        sink.compare(
            "defect-diagonal",
            lambda: diagonal(pred),
            lambda: combine([(1, rep.pi(rep.system.alpha_unit(q))), (-1, _range_projection(rep, q))]),
            q=q,
            trace=trace,
        )
    return sink.records


# -- Action -------------------------------------------------------------------


def check_action(
    system: DynSystem,
    words: Sequence[Word],
    elements: Sequence[SemigroupElement],
) -> list[CheckRecord]:
    """Symbolic checks of α on sampled words: identity, composition, products, involution, well-definedness."""
    sink = RecordSink("check_action", claim="action")
    e = system.acting.identity()
    for word in words:
        a = system.word(word)
        sink.symbolic("identity-action", system.alpha_word(e, word), a, a=word_str(word))
        for p in elements:
            inputs = {"p": p, "a": word_str(word)}
            sink.symbolic("well-defined", system.alpha_word(p, word), system.alpha(p, a), **inputs)
            image = system.alpha(p, a)
            sink.symbolic(
                "star",
                system.alpha(p, None if a is None else system.star(a)),
                None if image is None else system.star(image),
                **inputs,
            )
            for q in elements:
                sink.symbolic(
                    "composition",
                    system.alpha(p, system.alpha_word(q, word)),
                    system.alpha_word(mul(p, q), word),
                    p=p,
                    q=q,
                    a=word_str(word),
                )
    for w1 in words:
        for w2 in words:
            for p in elements:
                sink.symbolic(
                    "multiplicative",
                    system.alpha(p, system.word(w1 + w2)),
                    system.product(system.alpha_word(p, w1), system.alpha_word(p, w2)),
                    p=p,
                    a=word_str(w1),
                    b=word_str(w2),
                )
    return sink.records


# -- Universal and boundary relations -----------------------------------------


def _axb_system(rep: RepPair) -> AxbAlgebra:
    if not isinstance(rep.system, AxbAlgebra):
        raise ValueError(f"{rep.name} is not an ax+b fixture")
    return rep.system


def _presentation(
    rep: RepPair,
    sink: RecordSink,
    *,
    elements: Sequence[SemigroupElement],
    unitary_range: int,
    projection_bound: int,
    conjugate: bool,
) -> list[CheckRecord]:
    system = _axb_system(rep)
    pi = rep.pi_word
    xs = range(-unitary_range, unitary_range + 1)
    moduli = [d for d in system.family.moduli if d <= projection_bound]

    for s in elements:
        a = s.as_int()
        for x in xs:
            sink.compare(
                "isometry-unitary",
                lambda: compose(rep.V(s), pi((Unitary(x),))),
                lambda: compose(pi((Unitary(a * x),)), rep.V(s)),
                a=a,
                x=x,
            )
        for d in moduli:
            sink.compare(
                "isometry-projection",
                lambda: compose(rep.V(s), pi((Projection(d),))),
                lambda: compose(pi((Projection(a * d),)), rep.V(s)),
                a=a,
                d=d,
            )
            if conjugate:
                sink.compare(
                    "isometry-projection-conjugate",
                    lambda: compose_all([rep.V(s), pi((Projection(d),)), rep.V(s).adjoint()]),
                    lambda: compose(pi((Projection(a * d),)), pi((Projection(a),))),
                    a=a,
                    d=d,
                )

    sink.compare("projection-unit", lambda: pi((Projection(1),)), identity)
    for d1 in moduli:
        for d2 in moduli:
            sink.compare(
                "projection-meet",
                lambda: compose(pi((Projection(d1),)), pi((Projection(d2),))),
                lambda: pi((Projection(math.lcm(d1, d2)),)),
                d1=d1,
                d2=d2,
            )
        for x in xs:
            u, e = pi((Unitary(x),)), pi((Projection(d1),))
            if x % d1 == 0:
                sink.compare("unitary-projection-commute", lambda: compose(u, e), lambda: compose(e, u), d=d1, x=x)
            else:
                sink.compare("unitary-projection-orthogonal", lambda: compose_all([e, u, e]), zero, d=d1, x=x)
            for d2 in moduli:
                word = (Projection(d1), Unitary(x), Projection(d2))
                sink.compare(
                    "spanning-product",
                    lambda: compose_all([pi((g,)) for g in word]),
                    lambda: rep.pi(system.word(word)),
                    d1=d1,
                    x=x,
                    d2=d2,
                )
    return sink.records


def check_universal_relations(
    rep: RepPair,
    window: Sequence[BasisIndex],
    *,
    elements: Sequence[SemigroupElement],
    unitary_range: int = 4,
    projection_bound: int = 16,
    depth: int | None = None,
) -> list[CheckRecord]:
    """The defining relations of the ax+b algebra on a covariant ax+b fixture, plus the spanning-set product rule.

    Includes V_s E_d V_s* = E_{ad}E_a, which only a covariant pair satisfies;
    right-covariant pairs go through check_right_covariant_relations.
    """
    _axb_system(rep)
    if not rep.flags.covariant:
        raise UnsupportedRepresentationError(f"{rep.name} is not covariant; use check_right_covariant_relations")
    sink = RecordSink("check_universal_relations", window, depth, claim="covariant-presentation")
    return _presentation(
        rep,
        sink,
        elements=elements,
        unitary_range=unitary_range,
        projection_bound=projection_bound,
        conjugate=True,
    )


def check_right_covariant_relations(
    rep: RepPair,
    window: Sequence[BasisIndex],
    *,
    elements: Sequence[SemigroupElement],
    unitary_range: int = 4,
    projection_bound: int = 16,
    depth: int | None = None,
) -> list[CheckRecord]:
    """The relations every right-covariant pair on an ax+b fixture satisfies: the intertwining
    rules for V_s with U^x and E_d, and the relations among the U^x and E_d."""
    sink = RecordSink("check_right_covariant_relations", window, depth, claim="right-covariant-presentation")
    return _presentation(
        rep,
        sink,
        elements=elements,
        unitary_range=unitary_range,
        projection_bound=projection_bound,
        conjugate=False,
    )


def check_boundary_relations(
    rep: RepPair,
    p: SemigroupElement,
    window: Sequence[BasisIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """s_p U = U^p s_p (form="equality") and Σ_{m<p} U^m s_p s_p* U^{m*} ≤ I (form="inequality").

    The inequality is checked as: the summands are pairwise orthogonal and their sum is a projection.
    """
    system = _axb_system(rep)
    sink = RecordSink("check_boundary_relations", window, depth, claim="boundary-presentation")
    n = p.as_int()
    u = lambda m: rep.pi_word((Unitary(m),))  # noqa: E731
    sink.compare(
        "boundary-isometry-unitary",
        lambda: compose(rep.V(p), u(1)),
        lambda: compose(u(n), rep.V(p)),
        form="equality",
        p=p,
    )
    summands = [compose_all([u(m), _range_projection(rep, p), u(-m)]) for m in range(n)]
    total = combine([(1, t) for t in summands])
    sink.compare("boundary-sum", lambda: compose(total, total), lambda: total, form="inequality", p=p)
    for i in range(n):
        for j in range(i + 1, n):
            sink.compare(
                "boundary-orthogonal",
                lambda: compose(summands[i], summands[j]),
                zero,
                form="inequality",
                p=p,
                m1=i,
                m2=j,
            )
    logger.debug(f"[{rep.name}] boundary relations at {p} on {system.describe()}")
    return sink.records


def check_cuntz_relations(rep: RepPair, window: Sequence[BasisIndex], *, depth: int | None = None) -> list[CheckRecord]:
    """S_i isometries with orthogonal ranges summing to the identity."""
    sink = RecordSink("cuntz_isometries", window, depth, claim="cuntz-relations")
    isometries = cuntz_isometries(rep)
    for i, s in enumerate(isometries, start=1):
        sink.compare("cuntz-isometry", lambda: compose(s.adjoint(), s), identity, i=i)
        for j, t in enumerate(isometries, start=1):
            if i != j:
                sink.compare("cuntz-orthogonal", lambda: compose(s.adjoint(), t), zero, i=i, j=j)
    sink.compare(
        "cuntz-sum",
        lambda: combine([(1, compose(s, s.adjoint())) for s in isometries]),
        identity,
        k=len(isometries),
    )
    k = len(isometries)
    for length in (1, 2):
        units = [MatrixUnit(mu, mu) for mu in itertools.product(range(1, k + 1), repeat=length)]
        sink.compare(
            "uhf-partition",
            lambda: combine([(1, rep.pi(e)) for e in units]),
            identity,
            length=length,
        )
    return sink.records


def check_isometries(rep: RepPair, elements: Iterable[SemigroupElement], window: Sequence[BasisIndex]) -> list[CheckRecord]:
    """V(e) = I and V(p)*V(p) = I on the window."""
    sink = RecordSink("check_isometries", window, claim="isometric-representation")
    sink.compare("isometry-identity", lambda: rep.V(rep.acting.identity()), identity)
    for p in elements:
        sink.compare("isometry", lambda: compose(rep.V(p).adjoint(), rep.V(p)), identity, p=p)
    return sink.records


def is_covariant_on_window(rep: RepPair, elements: Iterable[SemigroupElement], window: Sequence[BasisIndex]) -> bool:
    """Whether every sampled defect vanishes on the window."""
    return all(not any(defect_predicate(rep, q)(b) for b in window) for q in elements)


def unitary_on_window(rep: RepPair, elements: Iterable[SemigroupElement], window: Sequence[BasisIndex]) -> bool:
    """For (id, V) on a trivial system: every V(p) is an isometry and a coisometry on the window."""
    window = list(window)
    return all(
        is_isometry_on_window(rep.V(p), window) and is_isometry_on_window(rep.V(p).adjoint(), window)
        for p in elements
    )


def check_trivial_covariance(
    rep: RepPair,
    elements: Iterable[SemigroupElement],
    window: Sequence[BasisIndex],
) -> list[CheckRecord]:
    """On (ℂ, P, id), (id, V) is covariant at p exactly when V(p) is unitary."""
    if not isinstance(rep.system, TrivialAlgebra):
        raise ValueError(f"{rep.name} is not a trivial system")
    sink = RecordSink("check_trivial_covariance", window, claim="covariance-iff-unitary")
    for p in elements:
        covariant = all(r.passed for r in check_covariance(rep, [(p, (Scalar(),))], window))
        unitary = unitary_on_window(rep, [p], window)
        sink.symbolic("covariance-iff-unitary", covariant, unitary, p=p, covariant=covariant, unitary=unitary)
    return sink.records


# -- Adjoint audit ------------------------------------------------------------


def check_adjoint_audit(
    rep: RepPair,
    window: Sequence[BasisIndex],
    *,
    elements: Iterable[SemigroupElement] = (),
    words: Iterable[Word] = (),
    depth: int | None = None,
    module: str = MODULE,
    context: dict[str, object] | None = None,
) -> list[CheckRecord]:
    """audit_adjoint on the window for the window operators, V(p) for each element and π of each word.

    One record per operator; an inconsistent adjoint evaluator gives an error record.
    """
    sink = RecordSink("audit_adjoint", window, depth, module=module, claim="adjoint-consistency")
    context = context or {}
    ops: list[tuple[str, LinOp]] = [(op.name or repr(op), op) for op in rep.window_operators()]
    ops += [(f"V({p})", rep.V(p)) for p in elements]
    ops += [(f"pi({word_str(w)})", rep.pi_word(w)) for w in words]
    seen: set[int] = set()
    for label, op in ops:
        if id(op) in seen:
            continue
        seen.add(id(op))
        try:
            audit_adjoint(op, sink.window)
        except (OperatorAuditError, ArithmeticError, ValueError, TypeError, KeyError) as e:
            logger.debug(f"[{rep.name}] {e}")
            sink.add(sink.error("adjoint-consistency", e, operator=label, **context))
            continue
        sink.add(
            make_record(
                module,
                "audit_adjoint",
                "adjoint-consistency",
                0,
                claim=sink.claim,
                inputs={"operator": label, **context},
                window_size=len(sink.window),
                window_depth=depth,
            )
        )
    return sink.records


__all__ = [
    "EvaluationDivergenceError",
    "RecordSink",
    "Sample",
    "UnsupportedRepresentationError",
    "check_action",
    "check_adjoint_audit",
    "check_boundary_relations",
    "check_covariance",
    "check_cuntz_relations",
    "check_defect",
    "check_isometries",
    "check_right_covariance",
    "check_right_covariant_relations",
    "check_trivial_covariance",
    "check_universal_relations",
    "covariance_sample",
    "defect",
    "defect_predicate",
    "is_covariant_on_window",
    "residual_on",
    "unitary_on_window",
]
