"""The convolution algebra c₀₀(P, 𝒜) and its evaluation under a representation pair."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from ..operators import BasisIndex, LinOp, combine, compose, zero
from ..operators.scalars import ONE, GaussianRational, Number
from ..records import CheckRecord
from ..semigroups import SemigroupElement, compose as mul
from .algebra import DynSystem, Term
from .checks import RecordSink
from .representations import RepPair


class C00Element:
    """Finite sum Σ c·(a ⊗ δ_p) with (a⊗δ_p)(b⊗δ_q) = aα_p(b) ⊗ δ_pq."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: DynSystem, terms: dict[tuple[Term, SemigroupElement], Number] | None = None):
        self.system = system
        self._terms: dict[tuple[Term, SemigroupElement], GaussianRational] = {}
        for key, c in (terms or {}).items():
            c = GaussianRational.of(c)
            if c:
                self._terms[key] = c

    @classmethod
    def simple(cls, system: DynSystem, a: Term | None, p: SemigroupElement, coeff: Number = ONE) -> C00Element:
        if a is None:
            return cls(system)
        return cls(system, {(a, p): coeff})

    @classmethod
    def unit(cls, system: DynSystem) -> C00Element:
        return cls.simple(system, system.unit(), system.acting.identity())

    def terms(self) -> list[tuple[Term, SemigroupElement, GaussianRational]]:
        return [(a, p, c) for (a, p), c in self._terms.items()]

    def _accumulate(self, pairs: Iterable[tuple[Term | None, SemigroupElement, GaussianRational]]) -> C00Element:
        acc: dict[tuple[Term, SemigroupElement], GaussianRational] = {}
        for a, p, c in pairs:
            if a is None or not c:
                continue
            key = (a, p)
            acc[key] = acc[key] + c if key in acc else c
        return C00Element(self.system, acc)

    def __add__(self, other: C00Element) -> C00Element:
        return self._accumulate([*self.terms(), *other.terms()])

    def __mul__(self, other: C00Element) -> C00Element:
        if self.system is not other.system:
            raise ValueError("c00 elements over different systems")
        s = self.system
        return self._accumulate(
            (s.product(a, s.alpha(p, b)), mul(p, q), c * d)
            for a, p, c in self.terms()
            for b, q, d in other.terms()
        )

    def __rmul__(self, c: Number) -> C00Element:
        c = GaussianRational.of(c)
        return self._accumulate((a, p, c * x) for a, p, x in self.terms())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, C00Element):
            return NotImplemented
        return self.system is other.system and self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        inner = " + ".join(f"{c}*({a} (x) d_{p})" for a, p, c in self.terms())
        return f"C00Element({inner or '0'})"


def evaluate_c00(x: C00Element, rep: RepPair) -> LinOp:
    """Φ_{π,V}: a ⊗ δ_p ↦ π(a)V(p), extended linearly."""
    if x.system is not rep.system:
        raise ValueError(f"element lives over another system than {rep.name}")
    terms = x.terms()
    if not terms:
        return zero()
    return combine([(c, compose(rep.pi(a), rep.V(p))) for a, p, c in terms])


def check_c00_evaluation(
    rep: RepPair,
    elements: Sequence[C00Element],
    window: Sequence[BasisIndex],
    *,
    depth: int | None = None,
) -> list[CheckRecord]:
    """Φ is unital and multiplicative on the sampled pairs."""
    sink = RecordSink("evaluate_c00", window, depth, claim="c00-evaluation")
    sink.compare(
        "c00-unit",
        lambda: evaluate_c00(C00Element.unit(rep.system), rep),
        lambda: rep.V(rep.acting.identity()),
    )
    for x in elements:
        for y in elements:
            sink.compare(
                "c00-multiplicative",
                lambda: evaluate_c00(x * y, rep),
                lambda: compose(evaluate_c00(x, rep), evaluate_c00(y, rep)),
                x=repr(x),
                y=repr(y),
            )
    return sink.records


def sample_c00(rep: RepPair, words, elements: Sequence[SemigroupElement]) -> list[C00Element]:
    """Simple tensors a ⊗ δ_p over sampled words and elements."""
    system = rep.system
    out = []
    for w in words:
        a = system.word(w)
        for p in elements:
            if a is not None:
                out.append(C00Element.simple(system, a, p))
    return out
