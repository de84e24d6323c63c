"""Build the representation a RunConfig names."""

from __future__ import annotations

import logging

from ..ideals import ConstructibleFamily, constructible_closure
from ..semigroups import MonoidKind
from ..systems import (
    RepPair,
    corrupted_action,
    cuntz_uhf,
    diagonal_system,
    left_regular_axb,
    tensor_defect,
    trivial_nat,
    trivial_system,
)
from .models import RunConfig

logger = logging.getLogger(__name__)


def build_family(config: RunConfig) -> ConstructibleFamily | None:
    d = config.descriptor()
    if d.kind != MonoidKind.MULT:
        return None
    return constructible_closure(d, config.ideals.modulus_bound)


def build_representation(config: RunConfig, family: ConstructibleFamily | None = None) -> RepPair:
    d = config.descriptor()
    section = config.representation
    kind = section.kind
    needs_family = kind in {"left-regular-axb", "corrupted-action"} or (kind == "tensor-defect" and section.base == "left-regular-axb")
    if family is None and needs_family:
        family = build_family(config)

    if kind == "left-regular-axb":
        rep = left_regular_axb(d, family)
    elif kind == "corrupted-action":
        rep = corrupted_action(d, family)
    elif kind == "diagonal":
        rep = diagonal_system(d)
    elif kind == "trivial-nat":
        rep = trivial_nat()
    elif kind == "cuntz-uhf":
        rep = cuntz_uhf(section.k)
    elif kind == "tensor-defect":
        if section.base == "left-regular-axb":
            base = left_regular_axb(d, family)
        elif section.base == "diagonal":
            base = diagonal_system(d)
        else:
            base = trivial_system(d)
        rep = tensor_defect(base, d, defect_generators=section.defect_generators)
    else:
        raise ValueError(f"unknown representation kind {kind!r}")
    logger.debug(f"[fixtures] {rep.name}: flags={rep.flags}")
    return rep
