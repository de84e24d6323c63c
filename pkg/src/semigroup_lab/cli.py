"""CLI 入口點：使用 Click + Rich。"""

from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from .config import Config, ConfigError
from .progress import ProgressEmitter
from .runner import LabRunner, RunReport, emit, load_config


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="開啟除錯日誌。")
def main(verbose: bool):
    """Semigroup Lab：半群動力系統的精確驗證工具。"""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)-5s %(message)s",
        datefmt="%H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def _console(json_progress: bool) -> Console:
    if json_progress:
        return Console(file=sys.stderr, no_color=True)
    return Console(stderr=True)


def _summary_table(report: RunReport) -> Table:
    """One row per (check, tag): record count, failures and the largest residual."""
    rows: dict[tuple[str, str, str], list] = {}
    for r in report.checks:
        row = rows.setdefault((r.module, r.check, r.tag), [0, 0, Fraction(0), r.form or ""])
        row[0] += 1
        if not r.passed:
            row[1] += 1
        row[2] = max(row[2], Fraction(r.residual))
    table = Table(title=f"{report.command}: {report.representation}")
    for col in ("module", "check", "tag", "records", "failed", "max residual", "form"):
        table.add_column(col, justify="right" if col in {"records", "failed"} else "left")
    for (module, check, tag), (count, failed, worst, form) in sorted(rows.items()):
        style = "red" if failed else None
        table.add_row(module, check, tag, str(count), str(failed), str(worst), form, style=style)
    return table


def _write_stdout(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    if not data.endswith(b"\n"):
        sys.stdout.buffer.write(b"\n")
    sys.stdout.buffer.flush()


def _run(
    command: str,
    config_path: str,
    json_progress: bool,
    workers: int | None,
    fmt: str | None = None,
    out: str | None = None,
) -> None:
    console = _console(json_progress)
    emitter = ProgressEmitter(enabled=json_progress)
    try:
        settings = Config.load(workers_override=workers)
        config = load_config(config_path)
        runner = LabRunner(config, settings, emitter=emitter, console=console)
        report = runner.run(command)

        console.print(_summary_table(report))
        fmt = fmt or config.output.format
        data = emit(report, fmt)
        target = out or (config.output.path if command == "report" else None)
        if target:
            Path(target).write_bytes(data)
            console.print(f"  Report written: [cyan]{target}[/cyan] ({fmt})")
        elif not json_progress:
            _write_stdout(data)
    except ConfigError as e:
        console.print("[red]Config error:[/red]")
        for d in e.diagnostics or [e]:
            console.print(f"  {d}")
        raise SystemExit(1)
    except KeyboardInterrupt:
        console.print("\n[yellow]Cancelled.[/yellow]")
        raise SystemExit(130)
    except SystemExit:
        raise
    except Exception as e:
        console.print(f"[red]Error:[/red] {e}")
        raise SystemExit(1)

    if not report.passed:
        raise SystemExit(1)


_config_argument = click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
_json_progress_option = click.option(
    "--json-progress", "json_progress", is_flag=True, default=False, help="輸出 NDJSON 進度事件到 stdout。"
)
_workers_option = click.option("--workers", "-w", default=None, type=int, help="平行 worker 數（預設：LAB_WORKERS 或 CPU 數）。")


@main.command()
@_config_argument
@_json_progress_option
@_workers_option
def ideals(config_path: str, json_progress: bool, workers: int | None):
    """理想子集運算：閉包、陪集運算與同餘理想的驗證。

    \b
    使用範例：
      lab ideals runs/axb-2-3.toml
    """
    _run("ideals", config_path, json_progress, workers, fmt="json")


@main.command()
@_config_argument
@_json_progress_option
@_workers_option
def check(config_path: str, json_progress: bool, workers: int | None):
    """共變性檢查：右共變、共變、缺陷、作用與泛關係。

    \b
    使用範例：
      lab check runs/axb-2.toml
      lab -v check runs/corrupted.toml
    """
    _run("check", config_path, json_progress, workers, fmt="json")


@main.command()
@_config_argument
@_json_progress_option
@_workers_option
def dilate(config_path: str, json_progress: bool, workers: int | None):
    """擴張建構：逐步消去缺陷並驗證每一階段。

    \b
    使用範例：
      lab dilate runs/trivial-nat.toml
      lab dilate --json-progress runs/trivial-nat.toml
    """
    _run("dilate", config_path, json_progress, workers, fmt="json")


@main.command()
@_config_argument
@click.option("--format", "fmt", default=None, type=click.Choice(["json", "csv"]), help="輸出格式（預設：設定檔 output.format）。")
@click.option("--out", "out", default=None, type=click.Path(dir_okay=False), help="輸出檔案（預設：設定檔 output.path 或 stdout）。")
@_json_progress_option
@_workers_option
def report(config_path: str, fmt: str | None, out: str | None, json_progress: bool, workers: int | None):
    """完整報告：依序執行 ideals、check、dilate 三個區段。

    \b
    使用範例：
      lab report runs/axb-2.toml --format csv --out axb-2.csv
    """
    _run("report", config_path, json_progress, workers, fmt=fmt, out=out)
