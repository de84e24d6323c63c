"""Pydantic models for run documents and reports."""

from __future__ import annotations

import json
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..dilation import StageMutation
from ..records import CheckRecord
from ..semigroups import MonoidDescriptor, MonoidKind, SemigroupElement

RepresentationKind = Literal[
    "left-regular-axb",
    "tensor-defect",
    "trivial-nat",
    "cuntz-uhf",
    "corrupted-action",
    "diagonal",
]

_AXB_KINDS = {"left-regular-axb", "corrupted-action"}


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SemigroupSection(_Section):
    kind: MonoidKind
    generators: list[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _valid_descriptor(self) -> SemigroupSection:
        self.descriptor()
        return self

    def descriptor(self) -> MonoidDescriptor:
        if self.kind == MonoidKind.AXB:
            raise ValueError("axb is an index set, not an acting monoid; use mult-monoid")
        return MonoidDescriptor(self.kind, tuple(self.generators))


class RepresentationSection(_Section):
    kind: RepresentationKind
    k: int = 2  # cuntz-uhf
    base: Literal["left-regular-axb", "diagonal", "trivial"] = "left-regular-axb"  # tensor-defect
    defect_generators: list[int] | None = None  # tensor-defect, mult-monoid only

    @field_validator("k")
    @classmethod
    def _k_at_least_two(cls, v: int) -> int:
        if v < 2:
            raise ValueError("k must be >= 2")
        return v


class IdealsSection(_Section):
    modulus_bound: int = 64

    @field_validator("modulus_bound")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("modulus_bound must be positive")
        return v


class DilationSection(_Section):
    schedule: list[str] = Field(default_factory=list)  # empty: fair schedule over defects
    stages: int = 1
    mutation: StageMutation = StageMutation.NONE

    @field_validator("stages")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("stages must be >= 1")
        return v


class WindowSection(_Section):
    depth: int = 3  # LAB_WINDOW_DEPTH replaces it only when the document leaves it out
    seed_count: int = 1

    @field_validator("depth", "seed_count")
    @classmethod
    def _non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError("must be >= 0")
        return v


class ChecksSection(_Section):
    element_bound: int = 2  # word length of sampled semigroup elements
    word_length: int = 1  # length of sampled generator words
    unitary_range: int = 4
    projection_bound: int = 16

    @field_validator("element_bound", "word_length", "unitary_range", "projection_bound")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be positive")
        return v


class OutputSection(_Section):
    format: Literal["json", "csv"] = "json"
    path: str | None = None


class RunConfig(_Section):
    semigroup: SemigroupSection
    representation: RepresentationSection
    ideals: IdealsSection = Field(default_factory=IdealsSection)
    dilation: DilationSection = Field(default_factory=DilationSection)
    window: WindowSection = Field(default_factory=WindowSection)
    checks: ChecksSection = Field(default_factory=ChecksSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _consistent(self) -> RunConfig:
        kind = self.semigroup.kind
        rep = self.representation.kind
        if rep in _AXB_KINDS and kind != MonoidKind.MULT:
            raise ValueError(f"{rep} needs a mult-monoid, got {kind}")
        if rep == "tensor-defect" and self.representation.base == "left-regular-axb" and kind != MonoidKind.MULT:
            raise ValueError("tensor-defect over left-regular-axb needs a mult-monoid")
        if rep in {"trivial-nat", "cuntz-uhf"} and kind != MonoidKind.NAT_ADDITIVE:
            raise ValueError(f"{rep} acts by nat-additive, got {kind}")
        if self.representation.defect_generators is not None:
            if kind != MonoidKind.MULT:
                raise ValueError("defect_generators needs a mult-monoid")
            missing = set(self.representation.defect_generators) - set(self.semigroup.generators)
            if missing:
                raise ValueError(f"defect_generators {sorted(missing)} are not semigroup generators")
        self.schedule_elements()
        return self

    def descriptor(self) -> MonoidDescriptor:
        return self.semigroup.descriptor()

    def schedule_elements(self) -> list[SemigroupElement]:
        d = self.descriptor()
        return [d.parse(s) for s in self.dilation.schedule]

    def window_depth(self, override: int | None = None) -> int:
        """The document's depth, or ``override`` when the document does not set one."""
        if override is not None and "depth" not in self.window.model_fields_set:
            return override
        return self.window.depth

    def with_window_depth(self, override: int | None) -> RunConfig:
        """A copy whose [window] depth is the one the run will use."""
        depth = self.window_depth(override)
        if depth == self.window.depth and "depth" in self.window.model_fields_set:
            return self
        window = self.window.model_copy(update={"depth": depth})
        return self.model_copy(update={"window": window})

    def to_toml(self) -> str:
        """The config as a run document; parse_config reads it back to an equal RunConfig."""
        data = self.model_dump(mode="json", exclude_none=True)
        lines: list[str] = []
        for section, values in data.items():
            lines.append(f"[{section}]")
            for key, value in values.items():
                lines.append(f"{key} = {_toml_value(value)}")
            lines.append("")
        return "\n".join(lines)


def _toml_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


# -- Reports -----------------------------------------------------------------


class Summary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0

    @classmethod
    def of(cls, records: list[CheckRecord]) -> Summary:
        failed = [r for r in records if not r.passed]
        return cls(
            total=len(records),
            passed=len(records) - len(failed),
            failed=len(failed),
            errors=sum(1 for r in failed if r.error),
        )


class StageSummary(BaseModel):
    stage: int
    q: str
    trivial: bool = False
    new_basis_count_on_window: int = 0
    window_size: int = 0
    claims: dict[str, bool] = Field(default_factory=dict)
    restriction_pass: bool = True
    preservation_checks: dict[str, bool] = Field(default_factory=dict)


class IdealTables(BaseModel):
    """Closure and operation tables printed by `lab ideals`.

    Each table row maps its operands and the ``result`` to their string forms.
    """

    monoid: str
    modulus_bound: int | None = None
    moduli: list[int] = Field(default_factory=list)
    saturated: bool | None = None
    truncated: bool | None = None
    table_modulus: int = 0
    tables: dict[str, list[dict[str, str]]] = Field(default_factory=dict)


class RunReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    command: str
    config: RunConfig
    representation: str = ""
    schedule: list[str] = Field(default_factory=list)
    checks: list[CheckRecord] = Field(default_factory=list)
    stages: list[StageSummary] = Field(default_factory=list)
    ideals: IdealTables | None = None
    summary: Summary = Field(default_factory=Summary)
    timing: dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.summary.failed == 0
