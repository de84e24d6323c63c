"""Tests for the ideal calculus, checked against brute-force set computations."""

from __future__ import annotations

import itertools
import math

import pytest

from semigroup_lab.ideals import (
    AxbIdeal,
    ConstructibleFamily,
    Coset,
    ZIdeal,
    axb_inverse_translate,
    axb_translate,
    congruence_ideal_meet,
    congruence_ideal_members,
    congruence_ideal_preimage,
    congruence_ideal_translate,
    constructible_closure,
    ideal_sum,
    intersect,
    inverse_translate,
    preimage_modulus,
    translate,
    validate_sum_assumption,
    verify_projection_comparison,
)
from semigroup_lab.semigroups import MonoidDescriptor, compose, enumerate_elements

W = 10_000


def _members(c: Coset, bound: int = W) -> set[int]:
    """Brute force: c ∩ [-bound, bound]."""
    if c.is_empty:
        return set()
    start = -bound + (c.representative + bound) % c.modulus
    return set(range(start, bound + 1, c.modulus))


def _all_cosets(moduli) -> list[Coset]:
    return [Coset(r, d) for d in moduli for r in range(d)]


# ---------- cosets ----------


class TestCoset:
    def test_representative_is_reduced(self):
        c = Coset(5, 3)
        assert c.representative == 2
        assert str(c) == "2+3Z"

    def test_rejects_zero_modulus(self):
        with pytest.raises(ValueError):
            Coset(0, 0)

    def test_empty(self):
        e = Coset.empty()
        assert e.is_empty
        assert not e.contains(0)
        assert str(e) == "{}"
        assert translate(2, e).is_empty
        assert intersect(e, Coset(0, 1)).is_empty

    def test_subset(self):
        assert Coset(1, 8).is_subset(Coset(1, 4))
        assert not Coset(1, 4).is_subset(Coset(1, 8))
        assert Coset.empty().is_subset(Coset(3, 5))

    def test_intersect_crt(self):
        assert intersect(Coset(1, 4), Coset(2, 3)) == Coset(5, 12)

    def test_intersect_incompatible(self):
        assert intersect(Coset(1, 2), Coset(0, 4)).is_empty

    def test_inverse_translate_empty_when_gcd_does_not_divide(self):
        assert inverse_translate(2, Coset(1, 4)).is_empty

    def test_inverse_translate_solves_congruence(self):
        # 3y ≡ 2 (mod 7) has y ≡ 3
        assert inverse_translate(3, Coset(2, 7)) == Coset(3, 7)

    def test_translate_rejects_non_positive_factor(self):
        with pytest.raises(ValueError):
            translate(0, Coset(0, 2))

    def test_ideal_sum(self):
        assert ideal_sum(ZIdeal(4), ZIdeal(6)) == ZIdeal(2)
        assert ideal_sum(ZIdeal.empty(), ZIdeal(6)) == ZIdeal(6)


# ---------- brute-force oracle ----------


class TestCosetOracle:
    """M = ⟨2,3⟩, every coset with modulus ≤ 64, integer window [-10⁴, 10⁴]."""

    @pytest.fixture
    def cosets(self, family23):
        return _all_cosets(family23.moduli)

    def test_translate(self, cosets):
        for c in cosets:
            for a in (2, 3, 6):
                expected = {a * x for x in _members(c) if -W <= a * x <= W}
                assert _members(translate(a, c)) == expected, (a, str(c))

    def test_inverse_translate(self, cosets):
        for c in cosets:
            for a in (2, 3, 6):
                expected = {y // a for y in _members(c, a * W) if y % a == 0}
                assert _members(inverse_translate(a, c)) == expected, (a, str(c))

    def test_intersect(self, family23):
        sampled = [Coset(r, d) for d in family23.moduli for r in range(min(d, 4))]
        for c1, c2 in itertools.product(sampled, repeat=2):
            big, small = (c1, c2) if c1.modulus >= c2.modulus else (c2, c1)
            expected = {x for x in _members(big) if small.contains(x)}
            assert _members(intersect(c1, c2)) == expected, (str(c1), str(c2))

    def test_ideal_sum_is_generated_subgroup(self, family23):
        small = [d for d in family23.moduli if d <= 27]
        for d1, d2 in itertools.product(small, repeat=2):
            combos = {i * d1 + j * d2 for i in range(-d2, d2 + 1) for j in range(-d1, d1 + 1)}
            smallest = min(x for x in combos if x > 0)
            assert ideal_sum(ZIdeal(d1), ZIdeal(d2)).modulus == smallest


# ---------- closure ----------


class TestClosure:
    def test_powers_of_two(self, family2):
        assert family2.moduli == (1, 2, 4, 8, 16, 32, 64)
        assert family2.saturated
        assert family2.truncated

    def test_two_three(self, family23):
        expected = sorted(2**i * 3**j for i in range(7) for j in range(4) if 2**i * 3**j <= 64)
        assert list(family23.moduli) == expected

    def test_trivial_monoid_is_saturated(self):
        family = constructible_closure(MonoidDescriptor.mult(), 10)
        assert family.moduli == (1,)
        assert family.saturated
        assert not family.truncated

    def test_round_limit_leaves_family_unsaturated(self, m2):
        family = constructible_closure(m2, 64, max_rounds=2)
        assert family.moduli == (1, 2, 4)
        assert not family.saturated

    def test_round_limit_past_fixpoint_is_saturated(self, m2):
        family = constructible_closure(m2, 8, max_rounds=10)
        assert family.moduli == (1, 2, 4, 8)
        assert family.saturated

    def test_negative_round_limit_rejected(self, m2):
        with pytest.raises(ValueError):
            constructible_closure(m2, 8, max_rounds=-1)

    def test_needs_mult_monoid(self, nat):
        with pytest.raises(ValueError):
            constructible_closure(nat, 10)

    def test_admits_above_bound(self, family2):
        assert family2.admits(128)
        assert not family2.admits(96)
        assert not family2.admits(3)
        assert 32 in family2

    def test_sum_assumption_holds(self, family23):
        records = validate_sum_assumption(family23)
        assert [r.tag for r in records] == ["ideal-sum", "ideal-intersection", "ideal-preimage"]
        assert all(r.passed and r.residual == "0" for r in records)

    def test_sum_assumption_counts_misses(self, m23):
        broken = ConstructibleFamily(descriptor=m23, bound=12, moduli=(1, 4, 6), saturated=False)
        records = {r.tag: r for r in validate_sum_assumption(broken)}
        assert not records["ideal-sum"].passed
        assert records["ideal-sum"].residual == "1"  # gcd(4, 6) = 2 missing
        assert not records["ideal-intersection"].passed


# ---------- ax+b ideals ----------


class TestAxbIdeal:
    def test_contains(self, m2):
        G = MonoidDescriptor.axb(m2)
        ideal = AxbIdeal.of(1, 4)
        assert ideal.contains(G.element((5, 4)))
        assert not ideal.contains(G.element((1, 2)))
        assert not AxbIdeal.empty().contains(G.element((0, 1)))

    def test_moduli_must_agree(self):
        with pytest.raises(ValueError):
            AxbIdeal(Coset(1, 4), 8)

    def test_translate(self, m2):
        G = MonoidDescriptor.axb(m2)
        moved = axb_translate(G.element((1, 2)), AxbIdeal.of(1, 4))
        assert moved == AxbIdeal.of(3, 8)
        assert str(moved) == "(3+8Z)xI8"

    def test_inverse_translate_undoes_translate(self, m2):
        G = MonoidDescriptor.axb(m2)
        g = G.element((1, 2))
        assert axb_inverse_translate(g, AxbIdeal.of(3, 8)) == AxbIdeal.of(1, 4)

    def test_translate_matches_pointwise_products(self, m2):
        G = MonoidDescriptor.axb(m2)
        ideal = AxbIdeal.of(1, 2)
        points = [h for h in enumerate_elements(G, 4) if ideal.contains(h)]
        for g in enumerate_elements(G, 2):
            moved = axb_translate(g, ideal)
            assert all(moved.contains(compose(g, h)) for h in points)

    def test_rejects_non_axb_element(self, m2):
        with pytest.raises(ValueError):
            axb_translate(m2.element(2), AxbIdeal.of(0, 1))


class TestProjectionComparison:
    def test_preimage_modulus(self):
        assert preimage_modulus(6, 4) == 2
        assert preimage_modulus(3, 4) == 4

    def test_holds_on_sampled_elements(self, m23, family23):
        elements = enumerate_elements(m23, 2)
        for p in elements:
            for q in elements:
                assert verify_projection_comparison(p, q, family23), (str(p), str(q))


# ---------- congruence monoid ----------


class TestCongruence:
    def test_meet_law_against_brute_force(self):
        limit = W
        odd = range(1, 100, 2)
        members = {a: congruence_ideal_members(a, limit) for a in odd}
        for a, b in itertools.combinations_with_replacement(odd, 2):
            meet = congruence_ideal_meet(a, b)
            assert meet == math.lcm(a, b)
            assert members[a] & members[b] == congruence_ideal_members(meet, limit), (a, b)

    def test_rejects_even_labels(self):
        with pytest.raises(ValueError):
            congruence_ideal_meet(2, 3)

    def test_translate(self):
        assert congruence_ideal_translate(5, 3) == 15
        moved = {5 * c for c in congruence_ideal_members(3, 2000)}
        assert moved == congruence_ideal_members(15, 10_000)

    def test_translate_accepts_elements(self):
        P = MonoidDescriptor.congruence()
        assert congruence_ideal_translate(P.element(9), 5) == 45

    def test_preimage(self):
        assert congruence_ideal_preimage(9, 15) == 5
        pulled = {c for c in congruence_ideal_members(1, 5000) if (9 * c) % 15 == 0}
        assert pulled == congruence_ideal_members(5, 5000)

    def test_members(self):
        assert congruence_ideal_members(3, 30) == frozenset({9, 21})
