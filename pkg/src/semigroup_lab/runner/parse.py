"""Run documents: TOML text to a validated RunConfig, or located diagnostics."""

from __future__ import annotations

import logging
import re
import tomllib
from pathlib import Path

from pydantic import ValidationError

from ..config import ConfigError, Diagnostic
from .models import RunConfig

logger = logging.getLogger(__name__)

_TOML_LINE_RE = re.compile(r"at line (\d+)")
_HEADER_RE = re.compile(r"^\s*\[\s*([A-Za-z0-9_-]+)\s*\]\s*(#.*)?$")
_KEY_RE = re.compile(r"^\s*([A-Za-z0-9_-]+)\s*=")


def locate(text: str, section: str | None, key: str | None = None) -> int:
    """1-based line of ``key`` inside ``[section]`` (or of the header); 0 if absent."""
    current = None
    header_line = 0
    for n, line in enumerate(text.splitlines(), start=1):
        m = _HEADER_RE.match(line)
        if m:
            current = m.group(1)
            if current == section and key is None:
                return n
            if current == section:
                header_line = n
            continue
        if current == section and key is not None:
            k = _KEY_RE.match(line)
            if k and k.group(1) == key:
                return n
    return header_line


def _diagnostic(text: str, error: dict) -> Diagnostic:
    loc = [str(x) for x in error.get("loc", ())]
    section = loc[0] if loc else None
    key = loc[1] if len(loc) > 1 else None
    message = error.get("msg", "invalid value")
    if error.get("type") == "extra_forbidden":
        message = f"unknown key {'.'.join(loc)}" if key else f"unknown section [{section}]"
    elif error.get("type") == "missing":
        message = f"missing required key {'.'.join(loc)}" if key else f"missing required section [{section}]"
    elif loc:
        message = f"{'.'.join(loc)}: {message}"
    return Diagnostic(line=locate(text, section, key), message=message)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a run document; raises ConfigError with every diagnostic."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        m = _TOML_LINE_RE.search(str(e))
        raise ConfigError(diagnostics=[Diagnostic(int(m.group(1)) if m else 0, f"malformed document: {e}")]) from e
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as e:
        diagnostics = sorted({_diagnostic(text, err) for err in e.errors()}, key=lambda d: (d.line, d.message))
        raise ConfigError(diagnostics=diagnostics) from e
    logger.debug(f"[config] {config.representation.kind} over {config.descriptor().label}")
    return config


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read {p}: {e}") from e
    return parse_config(text)
