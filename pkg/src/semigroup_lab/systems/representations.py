"""Representation pairs (π, V) and the shipped fixtures."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..ideals import ConstructibleFamily
from ..operators import (
    BasisIndex,
    LinOp,
    compose_all,
    diagonal,
    direct_sum as direct_sum_op,
    generate_window,
    identity,
    kron,
    monomial,
    zero,
)
from ..semigroups import (
    MonoidDescriptor,
    MonoidKind,
    SemigroupElement,
    compose,
    enumerate_elements,
    project_exponents,
    try_divide,
)
from .algebra import (
    AxbAlgebra,
    CorruptedAxbAlgebra,
    DiagonalAlgebra,
    DynSystem,
    Generator,
    MatrixUnit,
    Projection,
    Term,
    TrivialAlgebra,
    UhfAlgebra,
    Unitary,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepFlags:
    covariant: bool
    right_covariant: bool
    diagonal_defect: bool


class RepPair:
    """π on algebra terms, V on semigroup elements, both memoized.

    ``seed_source(n)`` returns the first n basis indices of a deterministic
    seed order; windows are seeds closed under the generator operators.
    """

    def __init__(
        self,
        system: DynSystem,
        *,
        pi_term: Callable[[Term], LinOp],
        isometry: Callable[[SemigroupElement], LinOp],
        seed_source: Callable[[int], list[BasisIndex]],
        flags: RepFlags,
        name: str,
        window_extras: Sequence[LinOp] = (),
    ):
        self.system = system
        self._pi_term = pi_term
        self._isometry = isometry
        self._seed_source = seed_source
        self.flags = flags
        self.name = name
        self.window_extras = list(window_extras)
        self._pi_cache: dict[Term, LinOp] = {}
        self._v_cache: dict[SemigroupElement, LinOp] = {}
        self._zero = zero()

    @property
    def acting(self) -> MonoidDescriptor:
        return self.system.acting

    def pi(self, a: Term | None) -> LinOp:
        if a is None:
            return self._zero
        op = self._pi_cache.get(a)
        if op is None:
            op = self._pi_cache.setdefault(a, self._pi_term(a))
        return op

    def pi_word(self, word: Sequence[Generator]) -> LinOp:
        return self.pi(self.system.word(word))

    def V(self, p: SemigroupElement) -> LinOp:
        if p.descriptor != self.acting:
            raise ValueError(f"{p} is not an element of {self.acting.label}")
        op = self._v_cache.get(p)
        if op is None:
            op = self._v_cache.setdefault(p, self._isometry(p))
        return op

    def seeds(self, n: int) -> list[BasisIndex]:
        return self._seed_source(n)

    def window_operators(self) -> list[LinOp]:
        ops = [self.pi(self.system.lift(g)) for g in self.system.sample_generators(1, 1)]
        ops.extend(self.V(p) for p in self.acting.generator_elements())
        ops.extend(self.window_extras)
        return ops

    def window(self, depth: int, seed_count: int = 1, seeds: Sequence[BasisIndex] | None = None) -> list[BasisIndex]:
        start = list(seeds) if seeds is not None else self.seeds(seed_count)
        out = generate_window(start, self.window_operators(), depth)
        logger.debug(f"[{self.name}] window depth={depth} seeds={len(start)} size={len(out)}")
        return out

    def cache_size(self) -> int:
        ops = list(self._pi_cache.values()) + list(self._v_cache.values())
        return sum(op.cache_size for op in ops)

    def __repr__(self) -> str:
        return f"RepPair({self.name}, {self.system.describe()})"


def _grow(enumerate_fn: Callable[[int], list], n: int) -> list:
    """First n items of enumerate_fn(bound), raising the bound until it stops growing."""
    bound, items = 0, enumerate_fn(0)
    while len(items) < n:
        bound += 1
        more = enumerate_fn(bound)
        if len(more) == len(items):
            break
        items = more
    return items[:n]


def _pi_from_generators(system: DynSystem, pi_generator: Callable[[Generator], LinOp]) -> Callable[[Term], LinOp]:
    def _pi(a: Term) -> LinOp:
        word = system.term_word(a)
        return compose_all([pi_generator(g) for g in word], name=str(a))

    return _pi


def _left_multiplication(g: SemigroupElement, name: str, isometry: bool = True) -> LinOp:
    return monomial(
        lambda b: compose(g, b),
        lambda r: try_divide(r, g),
        is_isometry_claimed=isometry,
        name=name,
    )


# -- Fixtures ----------------------------------------------------------------


def left_regular_axb(
    M: MonoidDescriptor,
    family: ConstructibleFamily,
    *,
    corrupted: bool = False,
) -> RepPair:
    """𝒜_{ℤ,M} and M acting on ℓ²(ℤ⋊M) by left multiplication.

    u^x is left multiplication by (x, 1), s_a by (0, a), and e_I is the
    projection onto (R_I) × I.
    """
    system = CorruptedAxbAlgebra(M, family) if corrupted else AxbAlgebra(M, family)
    G = MonoidDescriptor.axb(M)
    one = M.identity()

    def _pi_generator(g: Generator) -> LinOp:
        if isinstance(g, Unitary):
            if g.x == 0:
                return identity()
            shift = G.element((g.x, one))
            return _left_multiplication(shift, f"u^{g.x}")
        if isinstance(g, Projection):
            d = g.label
            return diagonal(
                lambda b: b.translation % d == 0 and b.dilation.as_int() % d == 0,
                name=f"e_{d}",
            )
        return identity()

    def _isometry(p: SemigroupElement) -> LinOp:
        if p.is_identity:
            return identity()
        return _left_multiplication(G.element((0, p)), f"s_{p}")

    rep = RepPair(
        system,
        pi_term=_pi_from_generators(system, _pi_generator),
        isometry=_isometry,
        seed_source=lambda n: _grow(lambda k: enumerate_elements(G, k), n),
        flags=RepFlags(covariant=True, right_covariant=True, diagonal_defect=True),
        name="corrupted-action" if corrupted else f"left-regular {G.label}",
    )
    logger.debug(f"[fixtures] built {rep!r} with {len(family.moduli)} moduli")
    return rep


def corrupted_action(M: MonoidDescriptor, family: ConstructibleFamily) -> RepPair:
    """The left-regular operators paired with α′_a(u^x) = u^{ax}; still claims covariance."""
    return left_regular_axb(M, family, corrupted=True)


def diagonal_system(P: MonoidDescriptor) -> RepPair:
    """𝒟_P on ℓ²(P): π(e_I) multiplies by 1_I and V(p) = λ_p."""
    system = DiagonalAlgebra(P)

    def _pi(a: Projection) -> LinOp:
        label = a.label
        return diagonal(lambda b: system.contains(label, b), name=f"e_{label}")

    def _isometry(p: SemigroupElement) -> LinOp:
        if p.is_identity:
            return identity()
        return _left_multiplication(p, f"lambda_{p}")

    return RepPair(
        system,
        pi_term=_pi,
        isometry=_isometry,
        seed_source=lambda n: _grow(lambda k: enumerate_elements(P, k), n),
        flags=RepFlags(covariant=True, right_covariant=True, diagonal_defect=True),
        name=f"diagonal {P.label}",
    )


def trivial_system(P: MonoidDescriptor) -> RepPair:
    """(ℂ, P, id) on a one-dimensional space with V ≡ I."""
    system = TrivialAlgebra(P)
    return RepPair(
        system,
        pi_term=lambda a: identity(),
        isometry=lambda p: identity(),
        seed_source=lambda n: [()],
        flags=RepFlags(covariant=True, right_covariant=True, diagonal_defect=True),
        name=f"trivial {P.label}",
    )


def tensor_defect(
    base: RepPair,
    P: MonoidDescriptor | None = None,
    *,
    defect_generators: Sequence[int] | None = None,
) -> RepPair:
    """π = ρ ⊗ I and V(p) = W(p) ⊗ λ_φ(p) on pairs (base index, element of Q).

    Q is P itself, or, for a mult-monoid, the submonoid on
    ``defect_generators`` with φ keeping only their exponents.
    """
    P = P or base.acting
    if P != base.acting:
        raise ValueError(f"base acts by {base.acting.label}, not {P.label}")
    if defect_generators is None:
        Q, phi = P, (lambda p: p)
    else:
        if P.kind != MonoidKind.MULT:
            raise ValueError("partial defects need a mult-monoid")
        Q = MonoidDescriptor.mult(*defect_generators)
        phi = lambda p: project_exponents(p, Q)  # noqa: E731

    def _pi(a: Term) -> LinOp:
        return kron(base.pi(a), identity())

    def _isometry(p: SemigroupElement) -> LinOp:
        if p.is_identity:
            return identity()
        image = phi(p)
        lam = identity() if image.is_identity else _left_multiplication(image, f"lambda_{image}")
        return kron(base.V(p), lam)

    def _seeds(n: int) -> list[BasisIndex]:
        left = base.seeds(n)
        right = _grow(lambda k: enumerate_elements(Q, k), n)
        pairs = sorted(
            itertools.product(range(len(left)), range(len(right))),
            key=lambda ij: (ij[0] + ij[1], ij),
        )
        return [(left[i], right[j]) for i, j in pairs[:n]]

    return RepPair(
        base.system,
        pi_term=_pi,
        isometry=_isometry,
        seed_source=_seeds,
        flags=RepFlags(
            covariant=base.flags.covariant and Q.is_group,
            right_covariant=base.flags.right_covariant,
            diagonal_defect=base.flags.diagonal_defect,
        ),
        name=f"tensor-defect({base.name}; {Q.label})",
    )


def trivial_nat() -> RepPair:
    """The unilateral shift: tensor_defect of (ℂ, ℕ, id)."""
    rep = tensor_defect(trivial_system(MonoidDescriptor.nat()))
    rep.name = "trivial-nat"
    return rep


def direct_sum(r1: RepPair, r2: RepPair) -> RepPair:
    """r1 ⊕ r2 over a shared system, on indices (0, b) and (1, b)."""
    if r1.system is not r2.system:
        raise ValueError("direct sums need both summands on the same system")

    def _seeds(n: int) -> list[BasisIndex]:
        left, right = r1.seeds(n), r2.seeds(n)
        merged = [x for pair in itertools.zip_longest(left, right) for x in pair]
        tagged = []
        for i, b in enumerate(merged):
            if b is not None:
                tagged.append((i % 2, b))
        return tagged[:n]

    return RepPair(
        r1.system,
        pi_term=lambda a: direct_sum_op(r1.pi(a), r2.pi(a)),
        isometry=lambda p: direct_sum_op(r1.V(p), r2.V(p)),
        seed_source=_seeds,
        flags=RepFlags(
            covariant=r1.flags.covariant and r2.flags.covariant,
            right_covariant=r1.flags.right_covariant and r2.flags.right_covariant,
            diagonal_defect=r1.flags.diagonal_defect and r2.flags.diagonal_defect,
        ),
        name=f"({r1.name}) + ({r2.name})",
    )


def preservation_fixture(P: MonoidDescriptor | None = None, defect_generators: Sequence[int] = (2,)) -> RepPair:
    """𝒟_P ⊕ (𝒟_P ⊗ λ on the defect generators); covariant away from them."""
    P = P or MonoidDescriptor.mult(2, 3)
    base = diagonal_system(P)
    return direct_sum(base, tensor_defect(base, P, defect_generators=defect_generators))


# -- Cuntz / UHF ---------------------------------------------------------------


def normalize_word(w: tuple[int, ...]) -> tuple[int, ...]:
    """Strip the all-1 tail: (2, 1, 1) and (2,) name the same eventually-1 word."""
    end = len(w)
    while end and w[end - 1] == 1:
        end -= 1
    return w[:end]


def _strip_prefix(w: tuple[int, ...], prefix: tuple[int, ...]) -> tuple[int, ...] | None:
    padded = w + (1,) * max(0, len(prefix) - len(w))
    if padded[: len(prefix)] != prefix:
        return None
    return padded[len(prefix):]


def cuntz_words(k: int, n: int) -> list[tuple[int, ...]]:
    """First n normalized words over {1..k} in shortlex order."""
    out: list[tuple[int, ...]] = [()]
    length = 1
    while len(out) < n:
        for w in itertools.product(range(1, k + 1), repeat=length):
            if w[-1] != 1:
                out.append(w)
        length += 1
    return out[:n]


def cuntz_uhf(k: int) -> RepPair:
    """The UHF core of O_k on eventually-1 words; W_i prepends i and V(n) = W_1^n."""
    system = UhfAlgebra(k)

    def _pi(a: MatrixUnit) -> LinOp:
        mu, nu = a.mu, a.nu

        def _fwd(w):
            rest = _strip_prefix(w, nu)
            return None if rest is None else normalize_word(mu + rest)

        def _inv(r):
            rest = _strip_prefix(r, mu)
            return None if rest is None else normalize_word(nu + rest)

        if mu == nu:
            return diagonal(lambda w: _strip_prefix(w, mu) is not None, name=str(a))
        return monomial(_fwd, _inv, name=str(a))

    def _isometry(p: SemigroupElement) -> LinOp:
        n = p.value
        if n == 0:
            return identity()
        ones = (1,) * n
        return monomial(
            lambda w: normalize_word(ones + w),
            lambda r: None if (rest := _strip_prefix(r, ones)) is None else normalize_word(rest),
            is_isometry_claimed=True,
            name=f"W1^{n}",
        )

    return RepPair(
        system,
        pi_term=_pi,
        isometry=_isometry,
        seed_source=lambda n: cuntz_words(k, n),
        flags=RepFlags(covariant=True, right_covariant=True, diagonal_defect=True),
        name=f"cuntz-uhf({k})",
    )


def cuntz_isometries(rep: RepPair) -> list[LinOp]:
    """S_i = π(W_i W_1*) V(1) for i = 1..k, recovered from the UHF fixture."""
    if not isinstance(rep.system, UhfAlgebra):
        raise ValueError(f"{rep.name} is not a UHF fixture")
    one = rep.acting.element(1)
    return [
        compose_all([rep.pi(MatrixUnit((i,), (1,))), rep.V(one)], name=f"S_{i}")
        for i in range(1, rep.system.k + 1)
    ]


__all__ = [
    "RepFlags",
    "RepPair",
    "cuntz_isometries",
    "cuntz_uhf",
    "corrupted_action",
    "cuntz_words",
    "diagonal_system",
    "direct_sum",
    "left_regular_axb",
    "normalize_word",
    "preservation_fixture",
    "tensor_defect",
    "trivial_nat",
    "trivial_system",
]
