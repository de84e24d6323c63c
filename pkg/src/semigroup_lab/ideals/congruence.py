"""Ideals I_a = aℕ ∩ P of the congruence monoid P = {1 + 4n}."""

from __future__ import annotations

import math

from ..semigroups import SemigroupElement
from .cosets import factor_value


def _odd(a: int) -> int:
    if a < 1 or a % 2 == 0:
        raise ValueError(f"congruence ideal label must be a positive odd integer, got {a}")
    return a


def congruence_ideal_meet(a: int, b: int) -> int:
    """I_a ∩ I_b = I_lcm(a,b)."""
    return math.lcm(_odd(a), _odd(b))


def congruence_ideal_translate(p: SemigroupElement | int, a: int) -> int:
    """p·I_a = I_pa."""
    return factor_value(p) * _odd(a)


def congruence_ideal_preimage(p: SemigroupElement | int, a: int) -> int:
    """p⁻¹·I_a = I_{a/gcd(a,p)}."""
    return _odd(a) // math.gcd(a, factor_value(p))


def congruence_ideal_members(a: int, limit: int) -> frozenset[int]:
    """Brute force: {c ≤ limit : c ≡ 1 (mod 4), a | c}."""
    _odd(a)
    return frozenset(c for c in range(1, limit + 1, 4) if c % a == 0)
