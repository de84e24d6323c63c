"""Exact comparisons of operators on finite windows of basis columns."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction

from .linop import LinOp, compose, identity
from .scalars import GaussianRational
from .vec import BasisIndex

logger = logging.getLogger(__name__)


class OperatorAuditError(Exception):
    """An operator's adjoint evaluator disagrees with its forward evaluator."""

    def __init__(self, op: LinOp, column: BasisIndex, row: BasisIndex, forward, backward):
        self.op = op
        self.column = column
        self.row = row
        super().__init__(
            f"adjoint audit failed for {op.name or 'operator'}: "
            f"<T e_{column}, e_{row}> = {forward} but conj <e_{column}, T* e_{row}> = {backward}"
        )


def window_residual(lhs: LinOp, rhs: LinOp, window: Iterable[BasisIndex]) -> Fraction:
    """max over b in the window of ||(lhs - rhs) e_b||²."""
    worst = Fraction(0)
    for b in window:
        diff = lhs.apply(b) - rhs.apply(b)
        if not diff.is_zero():
            worst = max(worst, diff.norm_squared())
    return worst


def window_matrix(t: LinOp, rows: Sequence[BasisIndex], cols: Sequence[BasisIndex]) -> list[list[GaussianRational]]:
    """Entries <e_r, T e_c>."""
    columns = [t.apply(c) for c in cols]
    return [[col.coeff(r) for col in columns] for r in rows]


def matrix_to_json(matrix: list[list[GaussianRational]]) -> list[list[str]]:
    return [[str(x) for x in row] for row in matrix]


def is_projection_on_window(t: LinOp, window: Iterable[BasisIndex]) -> bool:
    window = list(window)
    return (
        window_residual(compose(t, t), t, window) == 0
        and window_residual(t.adjoint(), t, window) == 0
    )


def is_isometry_on_window(t: LinOp, window: Iterable[BasisIndex]) -> bool:
    return window_residual(compose(t.adjoint(), t), identity(), window) == 0


def is_unitary_on_window(t: LinOp, window: Iterable[BasisIndex]) -> bool:
    window = list(window)
    return is_isometry_on_window(t, window) and window_residual(compose(t, t.adjoint()), identity(), window) == 0


def audit_adjoint(op: LinOp, window: Iterable[BasisIndex]) -> None:
    """Check <T e_b, e_r> = conj <e_b, T* e_r> for b, r in the window and the supports they reach."""
    window = list(window)
    rows: set[BasisIndex] = set(window)
    cols: set[BasisIndex] = set(window)
    for b in window:
        rows.update(op.apply(b).support())
        cols.update(op.adjoint_apply(b).support())
    for b in cols:
        col = op.apply(b)
        for r in rows:
            forward = col.coeff(r)
            backward = op.adjoint_apply(r).coeff(b).conjugate()
            if forward != backward:
                raise OperatorAuditError(op, b, r, forward, backward)


def generate_window(
    seeds: Iterable[BasisIndex],
    operators: Sequence[LinOp],
    depth: int,
) -> list[BasisIndex]:
    """Seeds closed under the operators and their adjoints, ``depth`` steps deep."""
    seen: dict[BasisIndex, None] = dict.fromkeys(seeds)
    frontier = list(seen)
    for _ in range(depth):
        nxt: list[BasisIndex] = []
        for b in frontier:
            for op in operators:
                for v in (op.apply(b), op.adjoint_apply(b)):
                    for r, _c in v.items():
                        if r not in seen:
                            seen[r] = None
                            nxt.append(r)
        if not nxt:
            break
        frontier = nxt
    return sorted(seen)
