"""Check records shared by every verification routine and the report."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Residual carried by records whose evaluation raised; any nonzero value keeps pass false.
ERROR_RESIDUAL = "1"


class CheckRecord(BaseModel):
    """One verified relation.

    ``residual`` is an exact fraction string; ``passed`` is serialized as
    ``pass`` and holds exactly when the residual is ``"0"``. ``claim`` names
    the property the relation belongs to (several tags share one claim).
    Records whose evaluation raised carry the message in ``error`` and
    the residual ERROR_RESIDUAL.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    module: str
    check: str
    tag: str
    claim: str = ""
    inputs: dict[str, str] = Field(default_factory=dict)
    window_size: int = 0
    window_depth: int | None = None
    residual: str = "0"
    passed: bool = Field(default=True, alias="pass")
    form: str | None = None  # "inequality" | "equality" for boundary relations
    error: str | None = None

    @model_validator(mode="after")
    def _pass_iff_zero_residual(self) -> CheckRecord:
        try:
            value = Fraction(self.residual)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"residual {self.residual!r} is not an exact fraction") from e
        if self.passed != (value == 0):
            raise ValueError(f"pass={self.passed} contradicts residual {self.residual}")
        if self.error is not None and self.passed:
            raise ValueError("a record with an error cannot pass")
        return self

    def sort_key(self) -> tuple:
        return (self.module, self.check, self.tag, sorted(self.inputs.items()))


def make_record(
    module: str,
    check: str,
    tag: str,
    residual: Fraction | int,
    *,
    claim: str = "",
    inputs: dict[str, Any] | None = None,
    window_size: int = 0,
    window_depth: int | None = None,
    form: str | None = None,
) -> CheckRecord:
    residual = Fraction(residual)
    return CheckRecord(
        module=module,
        check=check,
        tag=tag,
        claim=claim,
        inputs={k: str(v) for k, v in (inputs or {}).items()},
        window_size=window_size,
        window_depth=window_depth,
        residual=str(residual),
        passed=residual == 0,
        form=form,
    )


def error_record(
    module: str,
    check: str,
    tag: str,
    error: Exception | str,
    *,
    claim: str = "",
    inputs: dict[str, Any] | None = None,
    window_size: int = 0,
) -> CheckRecord:
    return CheckRecord(
        module=module,
        check=check,
        tag=tag,
        claim=claim,
        inputs={k: str(v) for k, v in (inputs or {}).items()},
        window_size=window_size,
        residual=ERROR_RESIDUAL,
        passed=False,
        error=str(error) or type(error).__name__,
    )


def all_passed(records: list[CheckRecord]) -> bool:
    return all(r.passed for r in records)


def failures(records: list[CheckRecord]) -> list[CheckRecord]:
    return [r for r in records if not r.passed]
