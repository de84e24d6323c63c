"""Ideals dℤ and cosets x + dℤ, with the translation calculus of M acting on ℤ."""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy.ntheory.modular import solve_congruence

from ..semigroups import MonoidKind, SemigroupElement


@dataclass(frozen=True)
class ZIdeal:
    """dℤ for ``modulus`` d >= 1; ``modulus=None`` is the empty ideal."""

    modulus: int | None

    def __post_init__(self) -> None:
        if self.modulus is not None and self.modulus < 1:
            raise ValueError(f"ideal modulus must be >= 1, got {self.modulus}")

    @classmethod
    def empty(cls) -> ZIdeal:
        return cls(None)

    @property
    def is_empty(self) -> bool:
        return self.modulus is None

    def contains(self, x: int) -> bool:
        return not self.is_empty and x % self.modulus == 0

    def is_subset(self, other: ZIdeal) -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return self.modulus % other.modulus == 0

    def __str__(self) -> str:
        return "{}" if self.is_empty else f"{self.modulus}Z"


@dataclass(frozen=True)
class Coset:
    """x + dℤ with 0 <= x < d; ``modulus=None`` is the empty coset."""

    representative: int = 0
    modulus: int | None = 1

    def __post_init__(self) -> None:
        if self.modulus is None:
            object.__setattr__(self, "representative", 0)
            return
        if self.modulus < 1:
            raise ValueError(f"coset modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "representative", self.representative % self.modulus)

    @classmethod
    def empty(cls) -> Coset:
        return cls(0, None)

    @property
    def is_empty(self) -> bool:
        return self.modulus is None

    @property
    def ideal(self) -> ZIdeal:
        return ZIdeal(self.modulus)

    def contains(self, x: int) -> bool:
        return not self.is_empty and (x - self.representative) % self.modulus == 0

    def is_subset(self, other: Coset) -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return self.modulus % other.modulus == 0 and other.contains(self.representative)

    def __str__(self) -> str:
        return "{}" if self.is_empty else f"{self.representative}+{self.modulus}Z"


def factor_value(a: SemigroupElement | int) -> int:
    """Integer value of a dilation factor a ∈ M."""
    if isinstance(a, SemigroupElement):
        if a.descriptor.kind not in (MonoidKind.MULT, MonoidKind.CONGRUENCE):
            raise ValueError(f"{a} is not a multiplicative factor")
        a = a.as_int()
    if a < 1:
        raise ValueError(f"factor must be a positive integer, got {a}")
    return a


def translate(a: SemigroupElement | int, c: Coset) -> Coset:
    """a·(x + dℤ) = ax + adℤ."""
    if c.is_empty:
        return c
    a = factor_value(a)
    return Coset(a * c.representative, a * c.modulus)


def inverse_translate(a: SemigroupElement | int, c: Coset) -> Coset:
    """{y : ay ∈ c}; empty iff gcd(a, d) does not divide x."""
    if c.is_empty:
        return c
    a = factor_value(a)
    g = math.gcd(a, c.modulus)
    if c.representative % g:
        return Coset.empty()
    modulus = c.modulus // g
    # a/g is invertible mod d/g; pow(_, -1, 1) is 0 which is what we want
    r = (c.representative // g) * pow(a // g, -1, modulus)
    return Coset(r, modulus)


def intersect(c1: Coset, c2: Coset) -> Coset:
    """CRT intersection: w + lcm(d1, d2)ℤ, or empty when incompatible."""
    if c1.is_empty or c2.is_empty:
        return Coset.empty()
    solved = solve_congruence((c1.representative, c1.modulus), (c2.representative, c2.modulus))
    if solved is None:
        return Coset.empty()
    w, modulus = solved
    return Coset(int(w), int(modulus))


def ideal_sum(i1: ZIdeal, i2: ZIdeal) -> ZIdeal:
    """d1ℤ + d2ℤ = gcd(d1, d2)ℤ."""
    if i1.is_empty:
        return i2
    if i2.is_empty:
        return i1
    return ZIdeal(math.gcd(i1.modulus, i2.modulus))
