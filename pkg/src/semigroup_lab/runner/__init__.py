from .emit import canonical_hash, emit, to_csv, to_json
from .fixtures import build_family, build_representation
from .models import IdealTables, RunConfig, RunReport, StageSummary, Summary
from .orchestrator import COMMAND_SECTIONS, LabRunner
from .parse import load_config, locate, parse_config

__all__ = [
    "COMMAND_SECTIONS",
    "IdealTables",
    "LabRunner",
    "RunConfig",
    "RunReport",
    "StageSummary",
    "Summary",
    "build_family",
    "build_representation",
    "canonical_hash",
    "emit",
    "load_config",
    "locate",
    "parse_config",
    "to_csv",
    "to_json",
]
