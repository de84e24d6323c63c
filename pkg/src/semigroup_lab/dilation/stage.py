"""One-step dilations and their iteration.

Stage n lives on K_n = K_{n-1} ⊕ L_n, where L_n is a copy of the defect
subspace of stage n-1 at q_n. Basis vectors are DilatedIndex values: the
vectors of K_{n-1} keep their index ("Old"), and the copy of a defect vector
b gets b's history extended by n ("New").
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from functools import total_ordering

from ..operators import BasisIndex, LinOp, Vec, compose, diagonal
from ..semigroups import SemigroupElement, enumerate_elements
from ..systems import RepFlags, RepPair, Term, UnsupportedRepresentationError, defect_predicate

logger = logging.getLogger(__name__)


class DilationError(Exception):
    """A dilation step was asked for on a representation that does not support it."""


@total_ordering
@dataclass(frozen=True)
class DilatedIndex:
    """A basis vector of some stage: the original index plus the stages it was copied at."""

    core: BasisIndex
    history: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.history, self.history[1:])):
            raise ValueError(f"history must be strictly increasing, got {self.history}")

    def sort_key(self) -> tuple:
        return (len(self.history), self.history, self.core)

    def __lt__(self, other: DilatedIndex) -> bool:
        if not isinstance(other, DilatedIndex):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.history:
            return f"{self.core!s}"
        return f"{self.core!s}@{'.'.join(map(str, self.history))}"


class StageMutation(StrEnum):
    NONE = "none"
    DROP_CROSS_BLOCK = "drop-cross-block"
    FREEZE_LOWER_PI = "freeze-lower-pi"


def _wrap(op: LinOp) -> LinOp:
    """An operator on the original basis, moved onto DilatedIndex(b, ())."""

    def _lift(v: Vec) -> Vec:
        return v.relabel(DilatedIndex)

    def _apply(idx: DilatedIndex) -> Vec:
        return Vec() if idx.history else _lift(op.apply(idx.core))

    def _adjoint_apply(idx: DilatedIndex) -> Vec:
        return Vec() if idx.history else _lift(op.adjoint_apply(idx.core))

    return LinOp(
        _apply,
        _adjoint_apply,
        is_monomial=op.is_monomial,
        is_diagonal_01=op.is_diagonal_01,
        is_isometry_claimed=op.is_isometry_claimed,
        name=op.name,
    )


def root_representation(rep: RepPair) -> RepPair:
    """Stage 0: ``rep`` on DilatedIndex(b, ())."""
    return RepPair(
        rep.system,
        pi_term=lambda a: _wrap(rep.pi(a)),
        isometry=lambda p: _wrap(rep.V(p)),
        seed_source=lambda n: [DilatedIndex(b) for b in rep.seeds(n)],
        flags=rep.flags,
        name=rep.name,
    )


@dataclass
class DilationStage:
    """Stage ``number`` of a dilation, with the inclusion T of the new summand.

    Stage 0 wraps the original pair and has no q, parent or predicate. A
    trivial stage reuses its parent's representation unchanged.
    """

    number: int
    rep: RepPair
    q: SemigroupElement | None = None
    parent: DilationStage | None = None
    predicate: Callable[[BasisIndex], bool] | None = None
    trivial: bool = False
    mutation: StageMutation = StageMutation.NONE
    T: LinOp = field(init=False)

    def __post_init__(self) -> None:
        self.T = self._inclusion()

    # -- Basis -------------------------------------------------------------

    def is_new(self, idx: DilatedIndex) -> bool:
        return not self.trivial and bool(idx.history) and idx.history[-1] == self.number

    def new_of(self, b: DilatedIndex) -> DilatedIndex:
        return DilatedIndex(b.core, b.history + (self.number,))

    def parent_of(self, idx: DilatedIndex) -> DilatedIndex:
        return DilatedIndex(idx.core, idx.history[:-1])

    def to_new(self, v: Vec) -> Vec:
        """T* on a parent vector: keep the defect part, copied into L_n."""
        if self.predicate is None:
            return Vec()
        return v.filter(self.predicate).relabel(self.new_of)

    def new_count(self, window: Sequence[DilatedIndex]) -> int:
        return sum(1 for b in window if self.is_new(b))

    # -- Operators ---------------------------------------------------------

    def _inclusion(self) -> LinOp:
        if self.trivial or self.predicate is None:
            return LinOp(lambda b: Vec(), lambda r: Vec(), is_monomial=True, name=f"T{self.number}")

        def _apply(idx: DilatedIndex) -> Vec:
            return Vec.basis(self.parent_of(idx)) if self.is_new(idx) else Vec()

        def _adjoint_apply(idx: DilatedIndex) -> Vec:
            if self.is_new(idx):
                return Vec()
            return self.to_new(Vec.basis(idx))

        return LinOp(_apply, _adjoint_apply, is_monomial=True, name=f"T{self.number}")

    def block(self, A: LinOp | None, B: LinOp | None, C: LinOp | None, *, name: str, diagonal_01: bool = False) -> LinOp:
        """[[A, B·T], [0, T*·C·T]] with A, B, C parent operators."""
        if self.trivial:
            raise DilationError("trivial stages have no block structure")

        def _apply(idx: DilatedIndex) -> Vec:
            if not self.is_new(idx):
                return A.apply(idx) if A is not None else Vec()
            b = self.parent_of(idx)
            out = B.apply(b) if B is not None else Vec()
            if C is not None:
                out = out + self.to_new(C.apply(b))
            return out

        def _adjoint_apply(idx: DilatedIndex) -> Vec:
            if self.is_new(idx):
                return self.to_new(C.adjoint_apply(self.parent_of(idx))) if C is not None else Vec()
            out = A.adjoint_apply(idx) if A is not None else Vec()
            if B is not None:
                out = out + self.to_new(B.adjoint_apply(idx))
            return out

        parts = [op for op in (A, B, C) if op is not None]
        return LinOp(
            _apply,
            _adjoint_apply,
            is_monomial=all(op.is_monomial for op in parts),
            is_diagonal_01=diagonal_01 and all(op.is_diagonal_01 for op in parts),
            name=name,
        )

    def lift(self, op: LinOp) -> LinOp:
        """A parent operator acting on the Old summand, zero on the New one."""
        if self.trivial:
            return op
        return self.block(op, None, None, name=f"[{op.name}]", diagonal_01=True)

    def old_projection(self) -> LinOp:
        return diagonal(lambda b: not self.is_new(b), name=f"P_old{self.number}")

    def new_projection(self) -> LinOp:
        return diagonal(self.is_new, name=f"P_new{self.number}")

    def describe(self) -> str:
        if self.number == 0:
            return f"stage 0 ({self.rep.name})"
        return f"stage {self.number} at q={self.q}" + (" (trivial)" if self.trivial else "")


def root_stage(rep: RepPair) -> DilationStage:
    return DilationStage(number=0, rep=root_representation(rep))


def defect_basis(rep: RepPair, q: SemigroupElement) -> Callable[[BasisIndex], bool]:
    """The defect membership predicate at q; DilationError when the defect is not diagonal."""
    try:
        return defect_predicate(rep, q)
    except UnsupportedRepresentationError as e:
        raise DilationError(str(e)) from e


def dilate_once(
    parent: RepPair | DilationStage,
    q: SemigroupElement,
    mutation: StageMutation = StageMutation.NONE,
) -> DilationStage:
    """One dilation step at q.

    π_n(a) = diag(π(a), T*π(α_q(a))T) and
    V_n(p) = [[V(p), V(q)*V(p)T], [0, T*V(p)T]].
    A covariant parent, or q = e, gives a trivial stage reusing the parent.
    """
    if isinstance(parent, RepPair):
        parent = root_stage(parent)
    prev = parent.rep
    n = parent.number + 1
    if q.descriptor != prev.acting:
        raise DilationError(f"{q} is not an element of {prev.acting.label}")

    if q.is_identity or prev.flags.covariant:
        logger.info(f"[dilation] stage {n}: empty defect at q={q}, reusing stage {n - 1}")
        return DilationStage(number=n, rep=prev, q=q, parent=parent, trivial=True, mutation=mutation)

    predicate = defect_basis(prev, q)
    system = prev.system
    stage = DilationStage(number=n, rep=prev, q=q, parent=parent, predicate=predicate, mutation=mutation)
    alpha_q_unit = system.alpha_unit(q)

    def _pi(a: Term) -> LinOp:
        lower = prev.pi(alpha_q_unit if mutation == StageMutation.FREEZE_LOWER_PI else system.alpha(q, a))
        return stage.block(prev.pi(a), None, lower, name=f"pi{n}({a})", diagonal_01=True)

    def _isometry(p: SemigroupElement) -> LinOp:
        vp = prev.V(p)
        cross = None if mutation == StageMutation.DROP_CROSS_BLOCK else compose(prev.V(q).adjoint(), vp)
        op = stage.block(vp, cross, vp, name=f"V{n}({p})")
        op.is_isometry_claimed = True
        return op

    stage.rep = RepPair(
        system,
        pi_term=_pi,
        isometry=_isometry,
        seed_source=prev.seeds,
        flags=RepFlags(covariant=False, right_covariant=True, diagonal_defect=True),
        name=f"{prev.name} | stage {n} q={q}",
        window_extras=[stage.T],
    )
    logger.debug(f"[dilation] built stage {n} at q={q} ({mutation})")
    return stage


def iterate(
    rep: RepPair,
    schedule: Sequence[SemigroupElement],
    stages: int,
    mutation: StageMutation = StageMutation.NONE,
) -> list[DilationStage]:
    """Stage 0 followed by ``stages`` dilation steps, cycling through ``schedule``."""
    if stages < 1:
        raise DilationError(f"stages must be >= 1, got {stages}")
    if not schedule:
        raise DilationError("schedule must not be empty")
    out = [root_stage(rep)]
    for n in range(1, stages + 1):
        q = schedule[(n - 1) % len(schedule)]
        out.append(dilate_once(out[-1], q, mutation))
    return out


def fair_schedule(rep: RepPair, bound: int, window: Sequence[BasisIndex]) -> list[SemigroupElement]:
    """Round-robin order: non-identity elements up to word length ``bound`` with a defect on the window."""
    out = []
    for q in enumerate_elements(rep.acting, bound):
        if q.is_identity:
            continue
        pred = defect_basis(rep, q)
        if any(pred(b) for b in window):
            out.append(q)
    return out
