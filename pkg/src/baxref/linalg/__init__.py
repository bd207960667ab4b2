"""Dense exact linear algebra on tensor-product spaces."""

from ._kernels import NUMBA_ENABLED
from .matrix import Matrix, ShapeError, SingularMatrixError
from .polys import (
    char_polynomial,
    minimal_polynomial,
    poly_divmod,
    poly_eval_matrix,
    poly_from_roots,
    poly_mul,
    poly_str,
    rational_roots,
    squarefree_decomposition,
)
from .tensor import (
    apply_left,
    apply_right,
    commutator_is_zero,
    embed,
    embed_sites,
    flip,
    insert_identity,
    kron,
    partial_trace,
    weighted_partial_trace,
)


def inverse(A: Matrix) -> Matrix:
    """Exact inverse; raises :class:`SingularMatrixError` naming the failing stage."""
    return A.inverse()


__all__ = [
    "Matrix",
    "ShapeError",
    "SingularMatrixError",
    "NUMBA_ENABLED",
    "kron",
    "embed",
    "embed_sites",
    "flip",
    "inverse",
    "weighted_partial_trace",
    "partial_trace",
    "insert_identity",
    "apply_left",
    "apply_right",
    "commutator_is_zero",
    "minimal_polynomial",
    "char_polynomial",
    "poly_eval_matrix",
    "poly_divmod",
    "poly_mul",
    "poly_from_roots",
    "poly_str",
    "rational_roots",
    "squarefree_decomposition",
]
