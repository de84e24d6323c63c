"""LabRunner: builds the sections a command needs and runs their jobs on a worker pool."""

from __future__ import annotations

import asyncio
import logging
import time

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

from ..config import Config
from ..progress import ProgressEmitter
from ..records import CheckRecord, error_record
from ..systems import RepPair
from ..tracker import SectionTracker
from .fixtures import build_family, build_representation
from .models import RunConfig, RunReport, Summary
from .sections import Job, Section, covariance_section, dilation_section, ideals_section, summarize_stages

logger = logging.getLogger(__name__)

COMMAND_SECTIONS: dict[str, list[str]] = {
    "ideals": ["ideals"],
    "check": ["covariance"],
    "dilate": ["dilation"],
    "report": ["ideals", "covariance", "dilation"],
}

SECTION_MODULES = {
    "ideals": "ideal-calculus",
    "covariance": "covariant-systems",
    "dilation": "dilation-engine",
}


class LabRunner:
    """Run one command of the lab against a RunConfig.

    Sections run in order; the jobs inside a section are independent and run
    concurrently (asyncio.gather over worker threads, at most ``workers`` at
    a time).
    """

    def __init__(
        self,
        config: RunConfig,
        settings: Config | None = None,
        emitter: ProgressEmitter | None = None,
        console: Console | None = None,
    ):
        self.settings = settings or Config()
        self.config = config.with_window_depth(self.settings.window_depth)
        self.emitter = emitter or ProgressEmitter(enabled=False)
        self.console = console or Console(stderr=True)
        self.tracker = SectionTracker()
        self._rep: RepPair | None = None
        self._family = None
        self._family_built = False

    @property
    def depth(self) -> int:
        return self.config.window.depth

    def family(self):
        if not self._family_built:
            self._family = build_family(self.config)
            self._family_built = True
        return self._family

    def representation(self) -> RepPair:
        if self._rep is None:
            self._rep = build_representation(self.config, self.family())
        return self._rep

    def run(self, command: str) -> RunReport:
        return asyncio.run(self.run_async(command))

    async def run_async(self, command: str) -> RunReport:
        if command not in COMMAND_SECTIONS:
            raise ValueError(f"unknown command {command!r}; expected one of {sorted(COMMAND_SECTIONS)}")
        names = COMMAND_SECTIONS[command]
        t0 = time.perf_counter()
        self.tracker.define_sections(names)
        self.tracker.start()
        label = self.config.representation.kind if command == "ideals" else self.representation().name
        self.emitter.run_start(command, label, names)
        self.console.print(f"  [bold]{command}[/bold]: {label} over {self.config.descriptor().label}  (depth {self.depth})")

        records: list[CheckRecord] = []
        stages = []
        schedule: list[str] = []
        ideals = None
        for name in names:
            section_records, section = await self._run_section(name)
            records.extend(section_records)
            if section is not None and section.ideals is not None:
                ideals = section.ideals
            if section is not None and section.stages:
                summarize_stages(section, section_records)
                stages = section.stages
                schedule = section.schedule

        self.tracker.complete()
        records.sort(key=CheckRecord.sort_key)
        summary = Summary.of(records)
        elapsed = time.perf_counter() - t0
        timing = {**self.tracker.durations(), "total": round(elapsed, 3)}
        self.emitter.run_complete(elapsed, summary.total, summary.failed)

        if summary.failed:
            self.console.print(f"  [red]{summary.failed} of {summary.total} checks failed[/red]  ({elapsed:.1f}s)")
        else:
            self.console.print(f"  [green]All {summary.total} checks passed[/green]  ({elapsed:.1f}s)")
        return RunReport(
            command=command,
            config=self.config,
            representation=label,
            schedule=schedule,
            checks=records,
            stages=stages,
            ideals=ideals,
            summary=summary,
            timing=timing,
        )

    # -- Sections ----------------------------------------------------------

    def _build_section(self, name: str) -> Section:
        if name == "ideals":
            return ideals_section(self.config, self.family())
        if name == "covariance":
            return covariance_section(self.config, self.representation(), self.depth)
        return dilation_section(self.config, self.representation(), self.depth, self.emitter)

    async def _run_section(self, name: str) -> tuple[list[CheckRecord], Section | None]:
        module = SECTION_MODULES[name]
        self.tracker.section_start(name)
        t0 = time.perf_counter()
        try:
            section = await asyncio.to_thread(self._build_section, name)
        except Exception as e:
            logger.error(f"[{name}] section setup failed: {e}")
            self.emitter.error(str(e), section=name)
            self.tracker.section_failed(name, str(e))
            self.console.print(f"  [red]Error:[/red] {name}: {e}")
            return [error_record(module, name, "section-setup", e)], None

        self.emitter.section_start(name, len(section.jobs))
        semaphore = asyncio.Semaphore(self.settings.workers)

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            TimeElapsedColumn(),
            console=self.console,
        ) as progress:
            task = progress.add_task(f"[{name}] {len(section.jobs)} checks...", total=None)
            done = 0

            async def _run_one(job: Job) -> list[CheckRecord]:
                nonlocal done
                async with semaphore:
                    try:
                        result = await asyncio.to_thread(job.fn)
                    except Exception as e:
                        logger.error(f"[{name}] {job.name} failed: {e}")
                        self.emitter.error(f"{job.name}: {e}", section=name)
                        raise
                done += 1
                failed = sum(1 for r in result if not r.passed)
                self.emitter.check_complete(name, job.name, len(result), failed)
                progress.update(task, description=f"[{name}] {done}/{len(section.jobs)} {job.name}")
                return result

            results = await asyncio.gather(*[_run_one(j) for j in section.jobs], return_exceptions=True)

        records: list[CheckRecord] = []
        for job, r in zip(section.jobs, results):
            if isinstance(r, BaseException):
                records.append(error_record(module, job.name, "job-error", r))
            else:
                records.extend(r)

        duration = time.perf_counter() - t0
        failed = sum(1 for r in records if not r.passed)
        self.tracker.section_complete(name, notes=f"{len(records)} checks, {failed} failed")
        self.emitter.section_complete(name, duration, len(records), failed)
        status = "[red]failed[/red]" if failed else "[green]done[/green]"
        self.console.print(f"  [{name}] {status}: {len(records)} checks, {failed} failed")
        return records, section
