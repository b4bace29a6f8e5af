"""Exact computation of Koszul modules W(V, K), resonance, Chen ranks and
Clebsch-Gordan modules over Q and prime fields."""

__version__ = "0.1.0"

from .core import (
    GradedDimTable,
    KoszulInput,
    free_module_dim,
    hilbert_table,
    koszul_dim,
    koszul_dim_presentation,
    vanishing_threshold,
)
from .linalg import FieldSpec, SubspaceSpec

__all__ = [
    "FieldSpec",
    "GradedDimTable",
    "KoszulInput",
    "SubspaceSpec",
    "free_module_dim",
    "hilbert_table",
    "koszul_dim",
    "koszul_dim_presentation",
    "vanishing_threshold",
]
