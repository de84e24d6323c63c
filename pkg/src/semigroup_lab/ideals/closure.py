"""Constructible ideal families of a mult-monoid acting on ℤ, identified by moduli."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field

from ..records import CheckRecord, make_record
from ..semigroups import ElementError, MonoidDescriptor, MonoidKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstructibleFamily:
    """Moduli d of the ideals dℤ reachable from ℤ, truncated at ``bound``.

    ``saturated`` is True when one more rule application adds no modulus
    <= bound. ``truncated`` records that some application produced a modulus
    above the bound, so the full closure is larger than ``moduli``.
    """

    descriptor: MonoidDescriptor
    bound: int
    moduli: tuple[int, ...]
    saturated: bool
    truncated: bool = False
    _members: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.moduli))

    def __contains__(self, d: int) -> bool:
        return d in self._members

    def admits(self, d: int) -> bool:
        """Whether d labels a constructible ideal.

        Above the bound this falls back to the monoid's element test: with
        pairwise coprime generators the closure consists of exactly the
        integer values of the monoid.
        """
        if d <= self.bound:
            return d in self
        try:
            self.descriptor.element(d)
        except ElementError:
            return False
        return True


def _apply_rules(descriptor: MonoidDescriptor, moduli: set[int]) -> set[int]:
    candidates: set[int] = set()
    for d in moduli:
        for a in descriptor.generators:
            candidates.add(a * d)
            candidates.add(d // math.gcd(a, d))
    for d1, d2 in itertools.combinations(moduli, 2):
        candidates.add(math.lcm(d1, d2))
        candidates.add(math.gcd(d1, d2))
    return candidates


def constructible_closure(
    descriptor: MonoidDescriptor,
    modulus_bound: int,
    *,
    max_rounds: int | None = None,
) -> ConstructibleFamily:
    """Fixed point of {1} under d ↦ ad, d ↦ d/gcd(a,d), lcm and gcd, within the bound.

    With ``max_rounds`` the iteration may stop early; the family is then
    reported unsaturated if another round would still add a modulus.
    """
    if descriptor.kind != MonoidKind.MULT:
        raise ValueError(f"constructible closure needs a mult-monoid, got {descriptor.kind}")
    if modulus_bound < 1:
        raise ValueError("modulus_bound must be >= 1")
    if max_rounds is not None and max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")

    moduli = {1}
    truncated = False
    rounds = 0
    while True:
        candidates = _apply_rules(descriptor, moduli)
        truncated = truncated or any(c > modulus_bound for c in candidates)
        fresh = {c for c in candidates if c <= modulus_bound} - moduli
        if not fresh or (max_rounds is not None and rounds >= max_rounds):
            break
        moduli |= fresh
        rounds += 1
    saturated = not fresh

    logger.debug(
        f"[ideals] closure of {descriptor.label} up to {modulus_bound}: "
        f"{len(moduli)} moduli after {rounds} rounds (saturated={saturated}, truncated={truncated})"
    )
    return ConstructibleFamily(
        descriptor=descriptor,
        bound=modulus_bound,
        moduli=tuple(sorted(moduli)),
        saturated=saturated,
        truncated=truncated,
    )


def validate_sum_assumption(family: ConstructibleFamily) -> list[CheckRecord]:
    """Confirm the family is closed under gcd, in-bound lcm and d/gcd(a, d).

    Residuals count the violating pairs.
    """
    gcd_misses = 0
    lcm_misses = 0
    preimage_misses = 0
    for d1, d2 in itertools.combinations_with_replacement(family.moduli, 2):
        if math.gcd(d1, d2) not in family:
            gcd_misses += 1
        lcm = math.lcm(d1, d2)
        if lcm <= family.bound and lcm not in family:
            lcm_misses += 1
    for d in family.moduli:
        for a in family.descriptor.generators:
            if d // math.gcd(a, d) not in family:
                preimage_misses += 1

    inputs = {"monoid": family.descriptor.label, "bound": family.bound}
    return [
        make_record("ideal-calculus", "sum-closure", "ideal-sum", gcd_misses, claim="ideal-closure", inputs=inputs),
        make_record("ideal-calculus", "intersection-closure", "ideal-intersection", lcm_misses, claim="ideal-closure", inputs=inputs),
        make_record("ideal-calculus", "preimage-closure", "ideal-preimage", preimage_misses, claim="ideal-closure", inputs=inputs),
    ]
