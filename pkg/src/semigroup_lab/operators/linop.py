"""Lazy column-finite operators with exact adjoints.

An operator is a pair of column evaluators, ``apply(b) = T e_b`` and
``adjoint_apply(r) = T* e_r``. Both are memoized per instance.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

from .scalars import ONE, GaussianRational, Number
from .vec import BasisIndex, Vec

logger = logging.getLogger(__name__)

Column = Callable[[BasisIndex], Vec]


class LinOp:
    """Column-finite operator on ℓ² of a countable basis.

    The flags are structural claims made by the constructor; windows are
    where they get checked.
    """

    def __init__(
        self,
        apply: Column,
        adjoint_apply: Column,
        *,
        is_monomial: bool = False,
        is_diagonal_01: bool = False,
        is_isometry_claimed: bool = False,
        name: str = "",
    ):
        self._apply = apply
        self._adjoint_apply = adjoint_apply
        self.is_monomial = is_monomial or is_diagonal_01
        self.is_diagonal_01 = is_diagonal_01
        self.is_isometry_claimed = is_isometry_claimed
        self.name = name
        self._cols: dict[BasisIndex, Vec] = {}
        self._rows: dict[BasisIndex, Vec] = {}
        self._adjoint: LinOp | None = None

    def apply(self, b: BasisIndex) -> Vec:
        v = self._cols.get(b)
        if v is None:
            # concurrent writers compute the same pure value
            v = self._cols.setdefault(b, self._apply(b))
        return v

    def adjoint_apply(self, r: BasisIndex) -> Vec:
        v = self._rows.get(r)
        if v is None:
            v = self._rows.setdefault(r, self._adjoint_apply(r))
        return v

    def apply_vec(self, v: Vec) -> Vec:
        return Vec.sum((c, self.apply(b)) for b, c in v.items())

    def adjoint_apply_vec(self, v: Vec) -> Vec:
        return Vec.sum((c, self.adjoint_apply(b)) for b, c in v.items())

    def adjoint(self) -> LinOp:
        if self._adjoint is None:
            adj = LinOp(
                self._adjoint_apply,
                self._apply,
                is_monomial=self.is_monomial,
                is_diagonal_01=self.is_diagonal_01,
                name=f"{self.name}*" if self.name else "",
            )
            adj._cols, adj._rows = self._rows, self._cols
            adj._adjoint = self
            self._adjoint = adj
        return self._adjoint

    @property
    def H(self) -> LinOp:
        return self.adjoint()

    @property
    def cache_size(self) -> int:
        return len(self._cols) + len(self._rows)

    def __matmul__(self, other: LinOp) -> LinOp:
        return compose(self, other)

    def __add__(self, other: LinOp) -> LinOp:
        return combine([(ONE, self), (ONE, other)])

    def __sub__(self, other: LinOp) -> LinOp:
        return combine([(ONE, self), (-ONE, other)])

    def __neg__(self) -> LinOp:
        return combine([(-ONE, self)])

    def __rmul__(self, c: Number) -> LinOp:
        return combine([(c, self)])

    def __repr__(self) -> str:
        return f"LinOp({self.name or '?'})"


# -- Constructors ------------------------------------------------------------


def monomial(
    forward: Callable[[BasisIndex], BasisIndex | None],
    inverse: Callable[[BasisIndex], BasisIndex | None],
    coeff: Callable[[BasisIndex], Number] | None = None,
    *,
    is_isometry_claimed: bool = False,
    name: str = "",
) -> LinOp:
    """apply(b) = coeff(b)·e_forward(b); ``inverse`` must undo ``forward`` on its range."""

    def _apply(b: BasisIndex) -> Vec:
        r = forward(b)
        if r is None:
            return Vec()
        return Vec.basis(r, coeff(b) if coeff else ONE)

    def _adjoint_apply(r: BasisIndex) -> Vec:
        b = inverse(r)
        if b is None:
            return Vec()
        c = GaussianRational.of(coeff(b)).conjugate() if coeff else ONE
        return Vec.basis(b, c)

    return LinOp(
        _apply,
        _adjoint_apply,
        is_monomial=True,
        is_isometry_claimed=is_isometry_claimed,
        name=name,
    )


def diagonal(predicate: Callable[[BasisIndex], bool], *, name: str = "") -> LinOp:
    """The 0/1 diagonal projection onto {e_b : predicate(b)}."""

    def _col(b: BasisIndex) -> Vec:
        return Vec.basis(b) if predicate(b) else Vec()

    return LinOp(_col, _col, is_diagonal_01=True, name=name)


def identity(name: str = "I") -> LinOp:
    return LinOp(Vec.basis, Vec.basis, is_diagonal_01=True, is_isometry_claimed=True, name=name)


def zero(name: str = "0") -> LinOp:
    return LinOp(lambda b: Vec(), lambda r: Vec(), is_diagonal_01=True, name=name)


# -- *-algebra operations ----------------------------------------------------


def combine(terms: Sequence[tuple[Number, LinOp]]) -> LinOp:
    """Σ c·T."""
    terms = [(GaussianRational.of(c), t) for c, t in terms]

    def _apply(b: BasisIndex) -> Vec:
        return Vec.sum((c, t.apply(b)) for c, t in terms)

    def _adjoint_apply(r: BasisIndex) -> Vec:
        return Vec.sum((c.conjugate(), t.adjoint_apply(r)) for c, t in terms)

    name = " + ".join(f"{c}*{t.name}" for c, t in terms)
    return LinOp(_apply, _adjoint_apply, name=name)


def compose(s: LinOp, t: LinOp) -> LinOp:
    """s∘t."""

    def _apply(b: BasisIndex) -> Vec:
        return s.apply_vec(t.apply(b))

    def _adjoint_apply(r: BasisIndex) -> Vec:
        return t.adjoint_apply_vec(s.adjoint_apply(r))

    return LinOp(
        _apply,
        _adjoint_apply,
        is_monomial=s.is_monomial and t.is_monomial,
        is_diagonal_01=s.is_diagonal_01 and t.is_diagonal_01,
        is_isometry_claimed=s.is_isometry_claimed and t.is_isometry_claimed,
        name=f"{s.name}.{t.name}",
    )


def compose_all(ops: Sequence[LinOp], name: str = "") -> LinOp:
    """Left-to-right product ops[0]∘ops[1]∘...; identity when empty."""
    if not ops:
        return identity(name or "I")
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = compose(op, out)
    if name:
        out.name = name
    return out


def adjoint(t: LinOp) -> LinOp:
    return t.adjoint()


def kron(s: LinOp, t: LinOp) -> LinOp:
    """s ⊗ t on pair indices (b, c)."""

    def _pairs(u: Vec, v: Vec) -> Vec:
        return Vec({(i, j): x * y for i, x in u.items() for j, y in v.items()})

    def _apply(bc: tuple) -> Vec:
        b, c = bc
        return _pairs(s.apply(b), t.apply(c))

    def _adjoint_apply(rc: tuple) -> Vec:
        r, c = rc
        return _pairs(s.adjoint_apply(r), t.adjoint_apply(c))

    return LinOp(
        _apply,
        _adjoint_apply,
        is_monomial=s.is_monomial and t.is_monomial,
        is_diagonal_01=s.is_diagonal_01 and t.is_diagonal_01,
        is_isometry_claimed=s.is_isometry_claimed and t.is_isometry_claimed,
        name=f"({s.name} (x) {t.name})",
    )


def direct_sum(s: LinOp, t: LinOp) -> LinOp:
    """s ⊕ t on tagged indices (0, b) and (1, b)."""
    parts = (s, t)

    def _apply(ib: tuple) -> Vec:
        i, b = ib
        return parts[i].apply(b).relabel(lambda x: (i, x))

    def _adjoint_apply(ir: tuple) -> Vec:
        i, r = ir
        return parts[i].adjoint_apply(r).relabel(lambda x: (i, x))

    return LinOp(
        _apply,
        _adjoint_apply,
        is_monomial=s.is_monomial and t.is_monomial,
        is_diagonal_01=s.is_diagonal_01 and t.is_diagonal_01,
        is_isometry_claimed=s.is_isometry_claimed and t.is_isometry_claimed,
        name=f"({s.name} (+) {t.name})",
    )
