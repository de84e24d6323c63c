"""Exact models of the abelian left-cancellative monoids and the ax+b semigroup."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from enum import StrEnum
from functools import total_ordering
from typing import Any


class MonoidKind(StrEnum):
    NAT_ADDITIVE = "nat-additive"
    MULT = "mult-monoid"
    CONGRUENCE = "congruence-4-1"
    AXB = "axb"


DEFAULT_CONGRUENCE_GENERATORS = (5, 9, 13)


@dataclass(frozen=True)
class MonoidDescriptor:
    """Describes one of the shipped monoids.

    ``generators`` are the coprime generators of a mult-monoid, or the chosen
    generator set of the congruence monoid {1+4n} (which is not finitely
    generated, so enumeration only ever sees a finite part of it).
    ``base`` is the multiplicative part of an axb descriptor.
    """

    kind: MonoidKind
    generators: tuple[int, ...] = ()
    base: MonoidDescriptor | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", MonoidKind(self.kind))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))
        if self.kind == MonoidKind.NAT_ADDITIVE:
            if self.generators or self.base is not None:
                raise ValueError("nat-additive takes no generators")
        elif self.kind == MonoidKind.MULT:
            check_coprime_generators(self.generators)
            if self.base is not None:
                raise ValueError("mult-monoid takes no base")
        elif self.kind == MonoidKind.CONGRUENCE:
            for g in self.generators:
                if g <= 1 or g % 4 != 1:
                    raise ValueError(f"congruence generator {g} is not of the form 1+4n with n >= 1")
        elif self.kind == MonoidKind.AXB:
            if self.base is None or self.base.kind != MonoidKind.MULT:
                raise ValueError("axb needs a mult-monoid multiplicative part")
            if self.generators:
                raise ValueError("axb generators are derived from its multiplicative part")

    # -- Constructors --------------------------------------------------------

    @classmethod
    def nat(cls) -> MonoidDescriptor:
        return cls(MonoidKind.NAT_ADDITIVE)

    @classmethod
    def mult(cls, *generators: int) -> MonoidDescriptor:
        return cls(MonoidKind.MULT, tuple(generators))

    @classmethod
    def congruence(cls, *generators: int) -> MonoidDescriptor:
        return cls(MonoidKind.CONGRUENCE, tuple(generators) or DEFAULT_CONGRUENCE_GENERATORS)

    @classmethod
    def axb(cls, base: MonoidDescriptor) -> MonoidDescriptor:
        return cls(MonoidKind.AXB, base=base)

    # -- Properties ----------------------------------------------------------

    @property
    def is_abelian(self) -> bool:
        return self.kind != MonoidKind.AXB

    @property
    def is_group(self) -> bool:
        """True only for the trivial monoid ⟨⟩, the one shipped kind with inverses."""
        return self.kind == MonoidKind.MULT and not self.generators

    @property
    def label(self) -> str:
        gens = ",".join(str(g) for g in self.generators)
        if self.kind == MonoidKind.NAT_ADDITIVE:
            return "N"
        if self.kind == MonoidKind.MULT:
            return f"<{gens}>"
        if self.kind == MonoidKind.CONGRUENCE:
            return f"1+4N<{gens}>"
        return f"Z x| {self.base.label}"

    def identity(self) -> SemigroupElement:
        if self.kind == MonoidKind.NAT_ADDITIVE:
            return SemigroupElement(self, 0)
        if self.kind == MonoidKind.MULT:
            return SemigroupElement(self, (0,) * len(self.generators))
        if self.kind == MonoidKind.CONGRUENCE:
            return SemigroupElement(self, 1)
        return SemigroupElement(self, (0, self.base.identity()))

    def generator_elements(self) -> list[SemigroupElement]:
        """The generators used by enumerate_elements, in index order."""
        if self.kind == MonoidKind.NAT_ADDITIVE:
            return [SemigroupElement(self, 1)]
        if self.kind == MonoidKind.MULT:
            n = len(self.generators)
            return [
                SemigroupElement(self, tuple(1 if j == i else 0 for j in range(n)))
                for i in range(n)
            ]
        if self.kind == MonoidKind.CONGRUENCE:
            return [SemigroupElement(self, g) for g in self.generators]
        one = self.base.identity()
        gens = [SemigroupElement(self, (1, one)), SemigroupElement(self, (-1, one))]
        gens.extend(SemigroupElement(self, (0, a)) for a in self.base.generator_elements())
        return gens

    # -- Element construction ------------------------------------------------

    def element(self, value: Any) -> SemigroupElement:
        """Build the element with natural coordinates ``value``.

        nat-additive and congruence take the integer itself, mult-monoid takes
        the integer and factors it over the generators, axb takes a pair
        ``(x, a)`` with ``a`` an integer or an element of the base.
        """
        if isinstance(value, SemigroupElement):
            if value.descriptor != self:
                raise DescriptorMismatchError(self, value.descriptor)
            return value
        if self.kind == MonoidKind.NAT_ADDITIVE:
            n = _as_int(value)
            if n < 0:
                raise ElementError(f"{n} is not in N")
            return SemigroupElement(self, n)
        if self.kind == MonoidKind.MULT:
            return SemigroupElement(self, self._factor(_as_int(value)))
        if self.kind == MonoidKind.CONGRUENCE:
            n = _as_int(value)
            if n < 1 or n % 4 != 1:
                raise ElementError(f"{n} is not of the form 1+4n")
            return SemigroupElement(self, n)
        try:
            x, a = value
        except (TypeError, ValueError):
            raise ElementError(f"axb element needs a pair (x, a), got {value!r}") from None
        return SemigroupElement(self, (_as_int(x), self.base.element(a)))

    def parse(self, text: str) -> SemigroupElement:
        """Parse ``"6"`` or ``"(1,2)"`` into an element."""
        text = text.strip()
        if self.kind == MonoidKind.AXB:
            m = re.fullmatch(r"\(\s*(-?\d+)\s*,\s*(\d+)\s*\)", text)
            if not m:
                raise ElementError(f"cannot parse {text!r} as an element of {self.label}")
            return self.element((int(m.group(1)), int(m.group(2))))
        if not re.fullmatch(r"-?\d+", text):
            raise ElementError(f"cannot parse {text!r} as an element of {self.label}")
        return self.element(int(text))

    def _factor(self, n: int) -> tuple[int, ...]:
        if n < 1:
            raise ElementError(f"{n} is not a positive integer")
        exps = []
        for g in self.generators:
            e = 0
            while n % g == 0:
                n //= g
                e += 1
            exps.append(e)
        if n != 1:
            raise ElementError(f"not in {self.label}: leftover factor {n}")
        return tuple(exps)


@total_ordering
@dataclass(frozen=True, eq=True)
class SemigroupElement:
    """A monoid element in canonical coordinates (see MonoidDescriptor.element)."""

    descriptor: MonoidDescriptor = field(repr=False)
    value: Any

    @property
    def is_identity(self) -> bool:
        return self == self.descriptor.identity()

    def as_int(self) -> int:
        """Integer value for nat-additive, mult-monoid and congruence elements."""
        kind = self.descriptor.kind
        if kind == MonoidKind.MULT:
            return math.prod(g**e for g, e in zip(self.descriptor.generators, self.value))
        if kind == MonoidKind.AXB:
            raise ElementError("axb elements have no integer value")
        return self.value

    @property
    def translation(self) -> int:
        """The x of an axb element (x, a)."""
        return self.value[0]

    @property
    def dilation(self) -> SemigroupElement:
        """The a of an axb element (x, a)."""
        return self.value[1]

    def sort_key(self) -> tuple:
        kind = self.descriptor.kind
        if kind == MonoidKind.AXB:
            x, a = self.value
            return (a.sort_key(), abs(x), x)
        if kind == MonoidKind.MULT:
            return (self.as_int(), self.value)
        return (self.value,)

    def __lt__(self, other: SemigroupElement) -> bool:
        if not isinstance(other, SemigroupElement):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.descriptor.kind == MonoidKind.AXB:
            x, a = self.value
            return f"({x},{a})"
        return str(self.as_int())


class ElementError(ValueError):
    pass


class DescriptorMismatchError(ValueError):
    def __init__(self, left: MonoidDescriptor, right: MonoidDescriptor):
        self.left = left
        self.right = right
        super().__init__(f"descriptor mismatch: {left.label} vs {right.label}")


def check_coprime_generators(generators: tuple[int, ...] | list[int]) -> None:
    """Raise ValueError unless the generators are >= 2 and pairwise coprime."""
    for g in generators:
        if g < 2:
            raise ValueError(f"generator {g} must be >= 2")
    for g, h in itertools.combinations(generators, 2):
        if math.gcd(g, h) != 1:
            raise ValueError(f"generators {g} and {h} are not coprime")


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ElementError(f"expected an integer, got {value!r}")
    return value


def _same(p: SemigroupElement, q: SemigroupElement) -> MonoidDescriptor:
    if p.descriptor != q.descriptor:
        raise DescriptorMismatchError(p.descriptor, q.descriptor)
    return p.descriptor


def compose(p: SemigroupElement, q: SemigroupElement) -> SemigroupElement:
    """Monoid product p·q; for axb (x,a)(y,b) = (x+ay, ab)."""
    d = _same(p, q)
    if d.kind == MonoidKind.NAT_ADDITIVE:
        return SemigroupElement(d, p.value + q.value)
    if d.kind == MonoidKind.MULT:
        return SemigroupElement(d, tuple(e + f for e, f in zip(p.value, q.value)))
    if d.kind == MonoidKind.CONGRUENCE:
        return SemigroupElement(d, p.value * q.value)
    (x, a), (y, b) = p.value, q.value
    return SemigroupElement(d, (x + a.as_int() * y, compose(a, b)))


def try_divide(p: SemigroupElement, q: SemigroupElement) -> SemigroupElement | None:
    """The unique r with q·r = p, or None."""
    d = _same(p, q)
    if d.kind == MonoidKind.NAT_ADDITIVE:
        r = p.value - q.value
        return SemigroupElement(d, r) if r >= 0 else None
    if d.kind == MonoidKind.MULT:
        diff = tuple(e - f for e, f in zip(p.value, q.value))
        return SemigroupElement(d, diff) if min(diff, default=0) >= 0 else None
    if d.kind == MonoidKind.CONGRUENCE:
        if p.value % q.value:
            return None
        return SemigroupElement(d, p.value // q.value)
    (x, a), (y, b) = p.value, q.value
    c = try_divide(a, b)
    if c is None:
        return None
    step, rest = divmod(x - y, b.as_int())
    if rest:
        return None
    return SemigroupElement(d, (step, c))


def power(p: SemigroupElement, n: int) -> SemigroupElement:
    out = p.descriptor.identity()
    for _ in range(n):
        out = compose(out, p)
    return out


def enumerate_elements(descriptor: MonoidDescriptor, word_length_bound: int) -> list[SemigroupElement]:
    """All products of at most ``word_length_bound`` generators, first occurrence kept.

    Words are visited by length, then lexicographically by generator index,
    so the identity always comes first.
    """
    if word_length_bound < 0:
        raise ValueError("word_length_bound must be >= 0")
    gens = descriptor.generator_elements()
    seen: set[SemigroupElement] = set()
    out: list[SemigroupElement] = []
    for length in range(word_length_bound + 1):
        for word in itertools.product(range(len(gens)), repeat=length):
            el = descriptor.identity()
            for i in word:
                el = compose(el, gens[i])
            if el not in seen:
                seen.add(el)
                out.append(el)
    return out


def project_exponents(p: SemigroupElement, target: MonoidDescriptor) -> SemigroupElement:
    """Homomorphism ⟨S⟩ -> ⟨S'⟩ keeping the exponents of the generators in S' ⊆ S."""
    if p.descriptor.kind != MonoidKind.MULT or target.kind != MonoidKind.MULT:
        raise ValueError("exponent projection needs mult-monoid descriptors")
    index = {g: i for i, g in enumerate(p.descriptor.generators)}
    missing = [g for g in target.generators if g not in index]
    if missing:
        raise ValueError(f"generators {missing} are not generators of {p.descriptor.label}")
    return SemigroupElement(target, tuple(p.value[index[g]] for g in target.generators))
