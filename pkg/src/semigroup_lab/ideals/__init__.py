from .axb import (
    AxbIdeal,
    axb_inverse_translate,
    axb_translate,
    preimage_modulus,
    verify_projection_comparison,
)
from .closure import ConstructibleFamily, constructible_closure, validate_sum_assumption
from .congruence import (
    congruence_ideal_meet,
    congruence_ideal_members,
    congruence_ideal_preimage,
    congruence_ideal_translate,
)
from .cosets import Coset, ZIdeal, ideal_sum, intersect, inverse_translate, translate

__all__ = [
    "AxbIdeal",
    "ConstructibleFamily",
    "Coset",
    "ZIdeal",
    "axb_inverse_translate",
    "axb_translate",
    "congruence_ideal_meet",
    "congruence_ideal_members",
    "congruence_ideal_preimage",
    "congruence_ideal_translate",
    "constructible_closure",
    "ideal_sum",
    "intersect",
    "inverse_translate",
    "preimage_modulus",
    "translate",
    "validate_sum_assumption",
    "verify_projection_comparison",
]
