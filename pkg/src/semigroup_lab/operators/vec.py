"""Finitely supported vectors over a countable orthonormal basis."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Any

from .scalars import ONE, GaussianRational, Number

BasisIndex = Hashable


class Vec:
    """Map BasisIndex -> GaussianRational with no stored zeros."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[BasisIndex, Number] | None = None):
        self._coeffs: dict[BasisIndex, GaussianRational] = {}
        if coeffs:
            for b, c in coeffs.items():
                c = GaussianRational.of(c)
                if c:
                    self._coeffs[b] = c

    @classmethod
    def basis(cls, b: BasisIndex, coeff: Number = ONE) -> Vec:
        v = cls()
        c = GaussianRational.of(coeff)
        if c:
            v._coeffs[b] = c
        return v

    @classmethod
    def zero(cls) -> Vec:
        return cls()

    @classmethod
    def sum(cls, terms: Iterable[tuple[Number, Vec]]) -> Vec:
        """Σ c·v, accumulated in one pass."""
        acc: dict[BasisIndex, GaussianRational] = {}
        for c, v in terms:
            c = GaussianRational.of(c)
            if not c:
                continue
            for b, x in v._coeffs.items():
                acc[b] = acc[b] + c * x if b in acc else c * x
        out = cls()
        out._coeffs = {b: x for b, x in acc.items() if x}
        return out

    def coeff(self, b: BasisIndex) -> GaussianRational:
        return self._coeffs.get(b, GaussianRational(Fraction(0)))

    def items(self) -> Iterator[tuple[BasisIndex, GaussianRational]]:
        return iter(self._coeffs.items())

    def support(self) -> frozenset[BasisIndex]:
        return frozenset(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def scale(self, c: Number) -> Vec:
        return Vec.sum([(c, self)])

    def filter(self, keep) -> Vec:
        out = Vec()
        out._coeffs = {b: x for b, x in self._coeffs.items() if keep(b)}
        return out

    def relabel(self, fn) -> Vec:
        """Apply an injective relabelling to the indices."""
        out = Vec()
        out._coeffs = {fn(b): x for b, x in self._coeffs.items()}
        return out

    def norm_squared(self) -> Fraction:
        return sum((x.abs2() for x in self._coeffs.values()), Fraction(0))

    def __add__(self, other: Vec) -> Vec:
        return Vec.sum([(ONE, self), (ONE, other)])

    def __sub__(self, other: Vec) -> Vec:
        return Vec.sum([(ONE, self), (-ONE, other)])

    def __neg__(self) -> Vec:
        return self.scale(-ONE)

    def __rmul__(self, c: Number) -> Vec:
        return self.scale(c)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        inner = ", ".join(f"{b!s}: {c}" for b, c in self._coeffs.items())
        return f"Vec({{{inner}}})"
