"""Report serialization: JSON document or one CSV row per check."""

from __future__ import annotations

import csv
import hashlib
import io
import json

from .models import RunReport

CSV_COLUMNS = ["module", "check", "tag", "claim", "inputs", "window_size", "window_depth", "residual", "pass", "form", "error"]


def report_dict(report: RunReport, *, timing: bool = True) -> dict:
    data = report.model_dump(mode="json", by_alias=True)
    if not timing:
        data.pop("timing", None)
    return data


def to_json(report: RunReport, *, timing: bool = True) -> str:
    return json.dumps(report_dict(report, timing=timing), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def to_csv(report: RunReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.checks:
        writer.writerow(
            [
                r.module,
                r.check,
                r.tag,
                r.claim,
                ";".join(f"{k}={v}" for k, v in sorted(r.inputs.items())),
                r.window_size,
                "" if r.window_depth is None else r.window_depth,
                r.residual,
                "true" if r.passed else "false",
                r.form or "",
                r.error or "",
            ]
        )
    return buf.getvalue()


def emit(report: RunReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(report).encode("utf-8")
    if fmt == "csv":
        return to_csv(report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def canonical_hash(report: RunReport) -> str:
    """sha256 of the JSON report without timing; equal across reruns of the same config."""
    return hashlib.sha256(to_json(report, timing=False).encode("utf-8")).hexdigest()
