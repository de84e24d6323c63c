"""Semigroup dynamical systems as normal-form monomial algebras.

Every shipped algebra is spanned by "monomials" (u^x e_I u^y, e_I,
W_μW_ν*, or the unit scalar) whose products are again a monomial or zero,
so an element of the spanning set is one hashable term and ``None`` stands
for 0. The action α is given on generators and extended to words.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

from sympy import igcdex

from ..ideals import ConstructibleFamily
from ..semigroups import MonoidDescriptor, MonoidKind, SemigroupElement

logger = logging.getLogger(__name__)


# -- Generators ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Unitary:
    """u^x."""

    x: int

    def __str__(self) -> str:
        return f"u^{self.x}"


@dataclass(frozen=True, order=True)
class Projection:
    """e_I with I labelled by its modulus (or threshold, for ℕ)."""

    label: int

    def __str__(self) -> str:
        return f"e_{self.label}"


@dataclass(frozen=True, order=True)
class MatrixUnit:
    """W_μ W_ν* with |μ| = |ν|."""

    mu: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.mu) != len(self.nu):
            raise ValueError(f"matrix unit needs equal lengths, got {self.mu} and {self.nu}")

    def __str__(self) -> str:
        mu = "".join(map(str, self.mu))
        nu = "".join(map(str, self.nu))
        return f"W[{mu}]W[{nu}]*"


@dataclass(frozen=True, order=True)
class Scalar:
    """The unit of ℂ."""

    def __str__(self) -> str:
        return "1"


Generator = Unitary | Projection | MatrixUnit | Scalar
Word = tuple[Generator, ...]


@dataclass(frozen=True, order=True)
class AxbTerm:
    """u^x e_d u^y with 0 <= x < d, the normal form in 𝒜_{ℤ,M}."""

    x: int
    d: int
    y: int

    def __post_init__(self) -> None:
        shift = self.x - self.x % self.d
        object.__setattr__(self, "x", self.x - shift)
        object.__setattr__(self, "y", self.y + shift)

    def __str__(self) -> str:
        return f"u^{self.x} e_{self.d} u^{self.y}"


Term = AxbTerm | Projection | MatrixUnit | Scalar


def word_str(word: Sequence[Generator]) -> str:
    return " ".join(str(g) for g in word) or "1"


class GeneratorLabelError(ValueError):
    pass


# -- Systems -------------------------------------------------------------------


class DynSystem(ABC):
    """A unital algebra with an action of an abelian monoid by endomorphisms."""

    name: str = "system"

    def __init__(self, acting: MonoidDescriptor):
        if not acting.is_abelian:
            raise ValueError(f"{acting.label} is not abelian and cannot act on a system")
        self.acting = acting

    # -- Algebra structure ---------------------------------------------------

    @abstractmethod
    def unit(self) -> Term: ...

    @abstractmethod
    def lift(self, g: Generator) -> Term:
        """The term of a single generator; rejects malformed labels."""

    @abstractmethod
    def multiply(self, a: Term, b: Term) -> Term | None: ...

    @abstractmethod
    def star(self, a: Term) -> Term: ...

    @abstractmethod
    def term_word(self, a: Term) -> Word:
        """A generator word whose product is ``a``."""

    @abstractmethod
    def sample_generators(self, unitary_range: int, projection_bound: int) -> list[Generator]: ...

    def product(self, a: Term | None, b: Term | None) -> Term | None:
        if a is None or b is None:
            return None
        return self.multiply(a, b)

    def word(self, gens: Sequence[Generator]) -> Term | None:
        return reduce(self.product, (self.lift(g) for g in gens), self.unit())

    # -- Action --------------------------------------------------------------

    @abstractmethod
    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word: ...

    @abstractmethod
    def _alpha_preimage(self, p: SemigroupElement, a: Term) -> Term:
        """α_p⁻¹ on a term already known to lie in α_p(𝒜)."""

    def alpha_word(self, p: SemigroupElement, gens: Sequence[Generator]) -> Term | None:
        """α_p applied generator by generator, then multiplied out."""
        image: list[Generator] = []
        for g in gens:
            image.extend(self.alpha_generator(p, g))
        return self.word(image)

    def alpha(self, p: SemigroupElement, a: Term | None) -> Term | None:
        if a is None:
            return None
        return self.alpha_word(p, self.term_word(a))

    def alpha_unit(self, p: SemigroupElement) -> Term:
        return self.alpha(p, self.unit())

    def commutes_with_range(self, p: SemigroupElement, a: Term) -> bool:
        q = self.alpha_unit(p)
        return self.multiply(a, q) == self.multiply(q, a)

    def alpha_inverse(self, p: SemigroupElement, a: Term | None) -> Term | None:
        """α_{p⁻¹}(a) = α_p⁻¹(α_p(1) a α_p(1))."""
        if a is None:
            return None
        q = self.alpha_unit(p)
        cut = self.product(self.product(q, a), q)
        if cut is None:
            return None
        return self._alpha_preimage(p, cut)

    def describe(self) -> str:
        return f"{self.name} over {self.acting.label}"


class AxbAlgebra(DynSystem):
    """𝒜_{ℤ,M}: spanned by u^x e_I u^y, with α_a(u^x) = u^{ax} e_{aM} and α_a(e_I) = e_{aI}."""

    name = "axb-algebra"

    def __init__(self, acting: MonoidDescriptor, family: ConstructibleFamily):
        if acting.kind != MonoidKind.MULT:
            raise ValueError(f"the ax+b algebra is acted on by a mult-monoid, not {acting.kind}")
        if family.descriptor != acting:
            raise ValueError("constructible family belongs to another monoid")
        super().__init__(acting)
        self.family = family

    def unit(self) -> AxbTerm:
        return AxbTerm(0, 1, 0)

    def lift(self, g: Generator) -> AxbTerm:
        if isinstance(g, Unitary):
            return AxbTerm(0, 1, g.x)
        if isinstance(g, Projection):
            if not self.family.admits(g.label):
                raise GeneratorLabelError(f"e_{g.label} is not a constructible ideal of {self.acting.label}")
            return AxbTerm(0, g.label, 0)
        if isinstance(g, Scalar):
            return self.unit()
        raise GeneratorLabelError(f"{g} is not a generator of {self.name}")

    def multiply(self, a: AxbTerm, b: AxbTerm) -> AxbTerm | None:
        # e_I u^z e_J = u^{c1} e_{I∩J} u^{c2} when z = c1 + c2 with c1 ∈ R_I, c2 ∈ R_J
        z = a.y + b.x
        s, _t, g = (int(v) for v in igcdex(a.d, b.d))
        if z % g:
            return None
        c1 = a.d * s * (z // g)
        c2 = z - c1
        return AxbTerm(a.x + c1, math.lcm(a.d, b.d), c2 + b.y)

    def star(self, a: AxbTerm) -> AxbTerm:
        return AxbTerm(-a.y, a.d, -a.x)

    def term_word(self, a: AxbTerm) -> Word:
        return (Unitary(a.x), Projection(a.d), Unitary(a.y))

    def sample_generators(self, unitary_range: int, projection_bound: int) -> list[Generator]:
        gens: list[Generator] = [Unitary(x) for x in range(-unitary_range, unitary_range + 1)]
        gens.extend(Projection(d) for d in self.family.moduli if d <= projection_bound)
        return gens

    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word:
        a = p.as_int()
        if isinstance(g, Unitary):
            return (Unitary(a * g.x), Projection(a))
        if isinstance(g, Projection):
            return (Projection(a * g.label),)
        return (Projection(a),)

    def _alpha_preimage(self, p: SemigroupElement, t: AxbTerm) -> AxbTerm:
        a = p.as_int()
        if t.x % a or t.y % a or t.d % a:
            raise ValueError(f"{t} is not in the range of alpha_{a}")
        return AxbTerm(t.x // a, t.d // a, t.y // a)


class CorruptedAxbAlgebra(AxbAlgebra):
    """The variant α′_a(u^x) = u^{ax} without the range projection e_{aM}.

    It disagrees with itself on the unit: α′(u^0) = 1 but α′(e_M) = e_{aM}.
    """

    name = "corrupted-action"

    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word:
        if isinstance(g, Unitary):
            return (Unitary(p.as_int() * g.x),)
        return super().alpha_generator(p, g)


class DiagonalAlgebra(DynSystem):
    """𝒟_P: projections e_I onto constructible ideals of P, α_p(e_I) = e_{pI}.

    Labels: for ℕ, I = n + ℕ is labelled n; for mult-monoids and the
    congruence monoid, I = {b : d | b} is labelled d.
    """

    name = "diagonal"

    def __init__(self, acting: MonoidDescriptor):
        if acting.kind == MonoidKind.AXB:
            raise ValueError("the diagonal system needs an abelian monoid")
        super().__init__(acting)
        self._additive = acting.kind == MonoidKind.NAT_ADDITIVE

    def unit(self) -> Projection:
        return Projection(0 if self._additive else 1)

    def lift(self, g: Generator) -> Projection:
        if isinstance(g, Scalar):
            return self.unit()
        if not isinstance(g, Projection):
            raise GeneratorLabelError(f"{g} is not a generator of {self.name}")
        if not self.admits(g.label):
            raise GeneratorLabelError(f"e_{g.label} is not a constructible ideal of {self.acting.label}")
        return g

    def admits(self, label: int) -> bool:
        if self._additive:
            return label >= 0
        if self.acting.kind == MonoidKind.CONGRUENCE:
            return label >= 1 and label % 2 == 1
        try:
            self.acting.element(label)
        except ValueError:
            return False
        return True

    def contains(self, label: int, b: SemigroupElement) -> bool:
        """Membership of b in the ideal labelled ``label``."""
        if self._additive:
            return b.value >= label
        return b.as_int() % label == 0

    def meet(self, l1: int, l2: int) -> int:
        return max(l1, l2) if self._additive else math.lcm(l1, l2)

    def forward(self, p: SemigroupElement, label: int) -> int:
        return label + p.value if self._additive else label * p.as_int()

    def multiply(self, a: Projection, b: Projection) -> Projection:
        return Projection(self.meet(a.label, b.label))

    def star(self, a: Projection) -> Projection:
        return a

    def term_word(self, a: Projection) -> Word:
        return (a,)

    def sample_generators(self, unitary_range: int, projection_bound: int) -> list[Generator]:
        labels = range(0, projection_bound + 1) if self._additive else range(1, projection_bound + 1)
        return [Projection(n) for n in labels if self.admits(n)]

    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word:
        if isinstance(g, Scalar):
            g = self.unit()
        return (Projection(self.forward(p, g.label)),)

    def _alpha_preimage(self, p: SemigroupElement, a: Projection) -> Projection:
        if self._additive:
            return Projection(a.label - p.value)
        return Projection(a.label // p.as_int())


class UhfAlgebra(DynSystem):
    """The UHF core of O_k: W_μW_ν*, with α_n prefixing n ones."""

    name = "uhf"

    def __init__(self, k: int):
        if k < 2:
            raise ValueError(f"UHF algebra needs k >= 2, got {k}")
        super().__init__(MonoidDescriptor.nat())
        self.k = k

    def unit(self) -> MatrixUnit:
        return MatrixUnit((), ())

    def lift(self, g: Generator) -> MatrixUnit:
        if isinstance(g, Scalar):
            return self.unit()
        if not isinstance(g, MatrixUnit):
            raise GeneratorLabelError(f"{g} is not a generator of {self.name}")
        if any(not 1 <= i <= self.k for i in g.mu + g.nu):
            raise GeneratorLabelError(f"{g} uses letters outside 1..{self.k}")
        return g

    def multiply(self, a: MatrixUnit, b: MatrixUnit) -> MatrixUnit | None:
        nu, sigma = a.nu, b.mu
        if len(nu) <= len(sigma):
            if sigma[: len(nu)] != nu:
                return None
            rest = sigma[len(nu):]
            return MatrixUnit(a.mu + rest, b.nu)
        if nu[: len(sigma)] != sigma:
            return None
        rest = nu[len(sigma):]
        return MatrixUnit(a.mu, b.nu + rest)

    def star(self, a: MatrixUnit) -> MatrixUnit:
        return MatrixUnit(a.nu, a.mu)

    def term_word(self, a: MatrixUnit) -> Word:
        return (a,)

    def sample_generators(self, unitary_range: int, projection_bound: int) -> list[Generator]:
        letters = range(1, self.k + 1)
        gens: list[Generator] = [self.unit()]
        gens.extend(MatrixUnit((i,), (j,)) for i in letters for j in letters)
        return gens

    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word:
        g = self.lift(g)
        ones = (1,) * p.value
        return (MatrixUnit(ones + g.mu, ones + g.nu),)

    def _alpha_preimage(self, p: SemigroupElement, a: MatrixUnit) -> MatrixUnit:
        n = p.value
        ones = (1,) * n
        if a.mu[:n] != ones or a.nu[:n] != ones:
            raise ValueError(f"{a} is not in the range of alpha_{n}")
        return MatrixUnit(a.mu[n:], a.nu[n:])


class TrivialAlgebra(DynSystem):
    """(ℂ, P, id)."""

    name = "trivial"

    def unit(self) -> Scalar:
        return Scalar()

    def lift(self, g: Generator) -> Scalar:
        if not isinstance(g, Scalar):
            raise GeneratorLabelError(f"{g} is not a generator of {self.name}")
        return g

    def multiply(self, a: Scalar, b: Scalar) -> Scalar:
        return a

    def star(self, a: Scalar) -> Scalar:
        return a

    def term_word(self, a: Scalar) -> Word:
        return (a,)

    def sample_generators(self, unitary_range: int, projection_bound: int) -> list[Generator]:
        return [Scalar()]

    def alpha_generator(self, p: SemigroupElement, g: Generator) -> Word:
        return (self.lift(g),)

    def _alpha_preimage(self, p: SemigroupElement, a: Scalar) -> Scalar:
        return a


def sample_words(
    system: DynSystem,
    word_length: int,
    unitary_range: int,
    projection_bound: int,
) -> list[Word]:
    """Generator words of length 1..word_length over the sampled generators."""
    gens = system.sample_generators(unitary_range, projection_bound)
    words: list[Word] = [(g,) for g in gens]
    frontier = list(words)
    for _ in range(word_length - 1):
        frontier = [w + (g,) for w in frontier for g in gens]
        words.extend(frontier)
    return words
