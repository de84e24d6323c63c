from .linop import (
    LinOp,
    adjoint,
    combine,
    compose,
    compose_all,
    diagonal,
    direct_sum,
    identity,
    kron,
    monomial,
    zero,
)
from .scalars import ONE, ZERO, GaussianRational
from .vec import BasisIndex, Vec
from .window import (
    OperatorAuditError,
    audit_adjoint,
    generate_window,
    is_isometry_on_window,
    is_projection_on_window,
    is_unitary_on_window,
    matrix_to_json,
    window_matrix,
    window_residual,
)

__all__ = [
    "BasisIndex",
    "GaussianRational",
    "LinOp",
    "ONE",
    "OperatorAuditError",
    "Vec",
    "ZERO",
    "adjoint",
    "audit_adjoint",
    "combine",
    "compose",
    "compose_all",
    "diagonal",
    "direct_sum",
    "generate_window",
    "identity",
    "is_isometry_on_window",
    "is_projection_on_window",
    "is_unitary_on_window",
    "kron",
    "matrix_to_json",
    "monomial",
    "window_matrix",
    "window_residual",
    "zero",
]
