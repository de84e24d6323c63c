"""Ideals (x + R_I) × I of ℤ⋊M and the projection comparison they support."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..semigroups import MonoidKind, SemigroupElement
from .closure import ConstructibleFamily
from .cosets import Coset, inverse_translate, translate


@dataclass(frozen=True)
class AxbIdeal:
    """(x + dℤ) × I_d where I_d = {b ∈ M : d | b}.

    The monoid ideal is identified with its modulus, so ``coset.modulus``
    and ``monoid_ideal_modulus`` always agree on nonempty ideals.
    """

    coset: Coset
    monoid_ideal_modulus: int | None = None

    def __post_init__(self) -> None:
        if self.monoid_ideal_modulus is None:
            object.__setattr__(self, "monoid_ideal_modulus", self.coset.modulus)
        elif self.coset.is_empty:
            object.__setattr__(self, "monoid_ideal_modulus", None)
        if not self.coset.is_empty and self.coset.modulus != self.monoid_ideal_modulus:
            raise ValueError(
                f"coset modulus {self.coset.modulus} differs from ideal modulus {self.monoid_ideal_modulus}"
            )

    @classmethod
    def of(cls, x: int, d: int) -> AxbIdeal:
        return cls(Coset(x, d))

    @classmethod
    def empty(cls) -> AxbIdeal:
        return cls(Coset.empty())

    @property
    def is_empty(self) -> bool:
        return self.coset.is_empty

    def contains(self, g: SemigroupElement) -> bool:
        if self.is_empty:
            return False
        return self.coset.contains(g.translation) and g.dilation.as_int() % self.monoid_ideal_modulus == 0

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        return f"({self.coset})xI{self.monoid_ideal_modulus}"


def _check_axb(g: SemigroupElement) -> None:
    if g.descriptor.kind != MonoidKind.AXB:
        raise ValueError(f"{g} is not an element of an ax+b semigroup")


def axb_translate(g: SemigroupElement, ideal: AxbIdeal) -> AxbIdeal:
    """(y, a)·((x + R_I) × I) = (y + ax + R_aI) × aI."""
    _check_axb(g)
    if ideal.is_empty:
        return ideal
    y, a = g.translation, g.dilation.as_int()
    moved = translate(a, ideal.coset)
    return AxbIdeal(Coset(y + moved.representative, moved.modulus))


def axb_inverse_translate(g: SemigroupElement, ideal: AxbIdeal) -> AxbIdeal:
    """(y, a)⁻¹·((x + R_I) × I) = (0, a)⁻¹·((x − y + R_I) × I)."""
    _check_axb(g)
    if ideal.is_empty:
        return ideal
    y, a = g.translation, g.dilation.as_int()
    shifted = Coset(ideal.coset.representative - y, ideal.coset.modulus)
    return AxbIdeal(inverse_translate(a, shifted))


def preimage_modulus(p: int, d: int) -> int:
    """Modulus of p⁻¹·I_d, namely d/gcd(p, d)."""
    return d // math.gcd(p, d)


def verify_projection_comparison(
    p: SemigroupElement,
    q: SemigroupElement,
    family: ConstructibleFamily,
) -> bool:
    """Ideal-level form of α_q(1) ≤ α_{p⁻¹}(α_q(1)).

    α_p(1)α_q(1) is the ideal with modulus lcm(p, q); pulling it back along p
    gives d_H = lcm(p, q)/p and the projection comparison reads d_H | q.
    The preimage is also computed through the coset calculus and must agree.
    """
    pv, qv = p.as_int(), q.as_int()
    meet = math.lcm(pv, qv)
    d_h = preimage_modulus(pv, meet)
    pulled = inverse_translate(pv, Coset(0, meet))
    if pulled.is_empty or pulled.modulus != d_h:
        return False
    if meet <= family.bound and not family.admits(meet):
        return False
    return qv % d_h == 0
