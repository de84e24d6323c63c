from .algebra import (
    AxbAlgebra,
    AxbTerm,
    CorruptedAxbAlgebra,
    DiagonalAlgebra,
    DynSystem,
    Generator,
    GeneratorLabelError,
    MatrixUnit,
    Projection,
    Scalar,
    Term,
    TrivialAlgebra,
    UhfAlgebra,
    Unitary,
    Word,
    sample_words,
    word_str,
)
from .c00 import C00Element, check_c00_evaluation, evaluate_c00, sample_c00
from .checks import (
    EvaluationDivergenceError,
    RecordSink,
    Sample,
    UnsupportedRepresentationError,
    check_action,
    check_adjoint_audit,
    check_boundary_relations,
    check_covariance,
    check_cuntz_relations,
    check_defect,
    check_isometries,
    check_right_covariance,
    check_right_covariant_relations,
    check_trivial_covariance,
    check_universal_relations,
    covariance_sample,
    defect,
    defect_predicate,
    is_covariant_on_window,
    residual_on,
    unitary_on_window,
)
from .representations import (
    RepFlags,
    RepPair,
    corrupted_action,
    cuntz_isometries,
    cuntz_uhf,
    cuntz_words,
    diagonal_system,
    direct_sum,
    left_regular_axb,
    normalize_word,
    preservation_fixture,
    tensor_defect,
    trivial_nat,
    trivial_system,
)

__all__ = [
    "AxbAlgebra",
    "AxbTerm",
    "C00Element",
    "CorruptedAxbAlgebra",
    "DiagonalAlgebra",
    "DynSystem",
    "EvaluationDivergenceError",
    "Generator",
    "GeneratorLabelError",
    "MatrixUnit",
    "Projection",
    "RecordSink",
    "RepFlags",
    "RepPair",
    "Sample",
    "Scalar",
    "Term",
    "TrivialAlgebra",
    "UhfAlgebra",
    "Unitary",
    "UnsupportedRepresentationError",
    "Word",
    "check_action",
    "check_adjoint_audit",
    "check_boundary_relations",
    "check_c00_evaluation",
    "check_covariance",
    "check_cuntz_relations",
    "check_defect",
    "check_isometries",
    "check_right_covariance",
    "check_right_covariant_relations",
    "check_trivial_covariance",
    "check_universal_relations",
    "corrupted_action",
    "covariance_sample",
    "cuntz_isometries",
    "cuntz_uhf",
    "cuntz_words",
    "defect",
    "defect_predicate",
    "diagonal_system",
    "direct_sum",
    "evaluate_c00",
    "is_covariant_on_window",
    "left_regular_axb",
    "normalize_word",
    "preservation_fixture",
    "residual_on",
    "sample_c00",
    "sample_words",
    "tensor_defect",
    "trivial_nat",
    "trivial_system",
    "unitary_on_window",
    "word_str",
]
