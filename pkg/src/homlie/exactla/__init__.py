"""Exact linear algebra over Q: the substrate for every other module."""

from ._backend import available_backends, get_backend, set_backend
from .linalg import (
    ONE,
    ZERO,
    Matrix,
    MatrixSpace,
    elementary_matrices,
    left_inverse,
    linear_map_matrix,
    right_inverse,
    solve_affine_conditions,
    solve_linear_conditions,
    Subspace,
    SubspaceOps,
    annihilator,
    det,
    image,
    is_zero_vector,
    kernel_basis,
    lin_comb,
    preimage,
    rref,
    solve_affine,
    subspace_ops,
    to_fraction,
    unit_vector,
    vadd,
    vec,
    vscale,
    vsub,
    zero_vector,
)

__all__ = [
    "ONE", "ZERO", "Matrix", "MatrixSpace", "elementary_matrices", "left_inverse",
    "linear_map_matrix", "right_inverse", "solve_affine_conditions", "solve_linear_conditions", "Subspace", "SubspaceOps", "annihilator", "available_backends",
    "det", "get_backend", "image", "is_zero_vector", "kernel_basis", "lin_comb", "preimage",
    "rref", "set_backend", "solve_affine", "subspace_ops", "to_fraction", "unit_vector",
    "vadd", "vec", "vscale", "vsub", "zero_vector",
]
