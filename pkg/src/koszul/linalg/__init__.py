"""Exact scalar arithmetic and matrix kernels over Q and F_p."""

from .field import QQ, FieldSpec, is_prime
from .galois import GaloisField
from .matrix import Echelon, ExactMatrix, budget, kernel_basis, null_space, rank, rref, sparse_rank
from .subspace import SubspaceSpec, annihilator, contains, intersection, subspace_sum

__all__ = [
    "QQ",
    "FieldSpec",
    "is_prime",
    "GaloisField",
    "Echelon",
    "ExactMatrix",
    "budget",
    "kernel_basis",
    "null_space",
    "rank",
    "rref",
    "sparse_rank",
    "SubspaceSpec",
    "annihilator",
    "contains",
    "intersection",
    "subspace_sum",
]
