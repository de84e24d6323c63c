from .stage import (
    DilatedIndex,
    DilationError,
    DilationStage,
    StageMutation,
    defect_basis,
    dilate_once,
    fair_schedule,
    iterate,
    root_representation,
    root_stage,
)
from .verify import (
    history_lengths,
    stage_defect,
    verify_compression,
    verify_elimination,
    verify_preservation,
    verify_restriction,
    verify_stage,
)

__all__ = [
    "DilatedIndex",
    "DilationError",
    "DilationStage",
    "StageMutation",
    "defect_basis",
    "dilate_once",
    "fair_schedule",
    "history_lengths",
    "iterate",
    "root_representation",
    "root_stage",
    "stage_defect",
    "verify_compression",
    "verify_elimination",
    "verify_preservation",
    "verify_restriction",
    "verify_stage",
]
