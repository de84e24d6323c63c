"""設定檔：讀取環境變數（LAB_WORKERS、LAB_WINDOW_DEPTH）。"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from dotenv import load_dotenv

MAX_DEFAULT_WORKERS = 8


@dataclass(frozen=True)
class Diagnostic:
    """A configuration problem, located by 1-based line (0 when the line is unknown)."""

    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}" if self.line else self.message


class ConfigError(Exception):
    def __init__(self, message: str = "", diagnostics: list[Diagnostic] | None = None):
        self.diagnostics = diagnostics or []
        if not message:
            message = "; ".join(str(d) for d in self.diagnostics) or "invalid configuration"
        super().__init__(message)


def _default_workers() -> int:
    return max(1, min(os.cpu_count() or 1, MAX_DEFAULT_WORKERS))


@dataclass
class Config:
    workers: int = field(default_factory=_default_workers)
    window_depth: int | None = None

    @classmethod
    def load(cls, workers_override: int | None = None) -> Config:
        """從環境變數載入設定；.env 檔案若存在也會一併讀取。"""
        try:
            load_dotenv()
        except UnicodeDecodeError:
            # .env saved as UTF-16 with BOM; environment variables still apply
            pass

        workers = workers_override if workers_override is not None else _env_int("LAB_WORKERS")
        if workers is None:
            workers = _default_workers()
        if workers < 1:
            raise ConfigError(f"LAB_WORKERS 必須 >= 1，收到 {workers}")
        depth = _env_int("LAB_WINDOW_DEPTH")
        if depth is not None and depth < 0:
            raise ConfigError(f"LAB_WINDOW_DEPTH 必須 >= 0，收到 {depth}")
        return cls(workers=workers, window_depth=depth)


def _env_int(name: str) -> int | None:
    raw = os.getenv(name, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} 必須是整數，收到 {raw!r}") from None
