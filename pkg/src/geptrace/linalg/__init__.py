"""Dense linear algebra oracle (Jacobi eigensolver, SVD, square roots, principal angles)."""

from .matcore import (
    Matrix,
    Vector,
    SymEig,
    Svd,
    as_matrix,
    as_vector,
    max_abs,
    check_symmetric,
    sym_eig,
    svd,
    mat_pow_half,
    orthonormal_basis,
    principal_angles,
    containment_angle,
    op_norm,
)

__all__ = [
    "Matrix",
    "Vector",
    "SymEig",
    "Svd",
    "as_matrix",
    "as_vector",
    "max_abs",
    "check_symmetric",
    "sym_eig",
    "svd",
    "mat_pow_half",
    "orthonormal_basis",
    "principal_angles",
    "containment_angle",
    "op_norm",
]
