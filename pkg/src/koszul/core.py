"""Graded dimensions of Koszul modules W(V, K).

Two independent routes:

* middle homology: W_q = ker(δ_{1,q+1}) / δ_2(K ⊗ Sym^q V);
* presentation: W_q = coker of Λ^3 V ⊗ Sym^(q-1) V → (Λ^2 V / K) ⊗ Sym^q V,
  with Λ^2 V / K realised by pairing against a basis of K^⊥.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, InternalInconsistency, PreconditionError
from .linalg import FieldSpec, SubspaceSpec, annihilator, budget, sparse_rank
from .multilinear import _times_variable, delta_images, sym_basis, wedge_pairing

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class KoszulInput:
    """The pair (V, K) with V = field^n and K ⊆ Λ^2 V in canonical form."""

    field: FieldSpec
    n: int
    K: SubspaceSpec

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("dim V must be non-negative")
        if self.K.ambient_dim != comb(self.n, 2):
            raise PreconditionError(
                f"K lives in a space of dimension {self.K.ambient_dim}, expected C({self.n},2) = {comb(self.n, 2)}"
            )
        if self.K.field != self.field:
            raise PreconditionError("K is not defined over the input field")

    @classmethod
    def from_vectors(cls, n: int, vectors, field: FieldSpec = FieldSpec(0)) -> "KoszulInput":
        return cls(field, n, SubspaceSpec.span(vectors, comb(n, 2), field))

    @classmethod
    def from_kperp(cls, n: int, vectors, field: FieldSpec = FieldSpec(0)) -> "KoszulInput":
        kperp = SubspaceSpec.span(vectors, comb(n, 2), field)
        return cls(field, n, kperp_to_k(kperp, n))

    @property
    def dim_wedge2(self) -> int:
        return comb(self.n, 2)

    def kperp(self) -> SubspaceSpec:
        """K^⊥ ⊆ Λ^2 V^∨ under the lexicographic wedge pairing."""
        if self.n < 2:
            return SubspaceSpec.zero(self.dim_wedge2, self.field)
        return annihilator(self.K, wedge_pairing(self.n))


def kperp_to_k(kperp: SubspaceSpec, n: int) -> SubspaceSpec:
    if n < 2:
        return SubspaceSpec.zero(comb(n, 2), kperp.field)
    return annihilator(kperp, wedge_pairing(n))


@dataclass(frozen=True)
class GradedDimTable:
    """Dimensions indexed by consecutive degrees start, start+1, ..."""

    entries: Tuple[int, ...]
    start: int = 0

    def __getitem__(self, q: int) -> int:
        if not self.start <= q < self.start + len(self.entries):
            raise KeyError(q)
        return self.entries[q - self.start]

    def items(self):
        return [(self.start + i, v) for i, v in enumerate(self.entries)]

    def degrees(self) -> range:
        return range(self.start, self.start + len(self.entries))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.items())

    def to_json(self) -> dict:
        return {"start": self.start, "entries": {str(q): v for q, v in self.items()}}


def free_module_dim(n: int, q: int) -> int:
    """dim W_q(V, 0) = (q+1) C(n+q, q+2)."""
    if n < 0 or q < 0:
        raise ValueError("n and q must be non-negative")
    return (q + 1) * comb(n + q, q + 2)


def _guard(ncols: int, what: str):
    b = budget()
    if ncols > b:
        raise BudgetExceeded(what, ncols, b)


def _restricted_delta2(inp: KoszulInput, q: int) -> List[Dict[int, object]]:
    """Columns of δ_2 on K ⊗ Sym^q, indexed (k, s) ↦ k * dim Sym^q + s."""
    n = inp.n
    dim_s = len(sym_basis(n, q))
    base = delta_images(n, 2, q)
    F = inp.field
    p = F.characteristic
    cols = []
    for kvec in inp.K.vectors():
        terms = [(pair, c) for pair, c in kvec.items()]
        for s in range(dim_s):
            acc: Dict[int, object] = {}
            for pair, c in terms:
                for r, sign in base[pair * dim_s + s].items():
                    acc[r] = acc.get(r, 0) + (c if sign > 0 else -c)
            if p:
                acc = {r: v % p for r, v in acc.items() if v % p}
            else:
                acc = {r: v for r, v in acc.items() if v}
            cols.append(acc)
    return cols


def koszul_dim(inp: KoszulInput, q: int, check: bool = True) -> int:
    """dim W_q(V, K) as dim ker δ_{1,q+1} - rank δ_2|_{K ⊗ Sym^q}.

    With ``check`` the composite δ_1 ∘ δ_2 is verified to vanish on every
    generated column before the rank is taken.
    """
    if q < 0:
        raise PreconditionError("degree q must be non-negative")
    n, F = inp.n, inp.field
    if n == 0:
        return 0
    src_dim = n * len(sym_basis(n, q + 1))
    _guard(src_dim, f"δ_1 in degree {q + 1}")
    _guard(inp.K.dim * len(sym_basis(n, q)), f"δ_2 on K ⊗ Sym^{q}")
    ker_delta1 = src_dim - sparse_rank(delta_images(n, 1, q + 1), F)
    if inp.K.dim == 0:
        return ker_delta1
    cols = _restricted_delta2(inp, q)
    if check:
        _verify_complex(cols, n, q, F)
    return ker_delta1 - sparse_rank(cols, F)


def _verify_complex(cols, n: int, q: int, F: FieldSpec):
    dim_s1 = len(sym_basis(n, q + 1))
    mult = _times_variable(n, q + 1)
    p = F.characteristic
    for col in cols:
        acc: Dict[int, object] = {}
        for r, v in col.items():
            i, s = divmod(r, dim_s1)
            t = mult[s][i]
            acc[t] = acc.get(t, 0) + v
        if any((v % p if p else v) for v in acc.values()):
            raise InternalInconsistency(f"δ_1 ∘ δ_2 does not vanish in degree {q}")


def presentation_columns(inp: KoszulInput, q: int, kperp: Optional[SubspaceSpec] = None) -> List[Dict[int, object]]:
    """Columns of π in degree q: Λ^3 V ⊗ Sym^(q-1) → k^{dim K^⊥} ⊗ Sym^q."""
    n, F = inp.n, inp.field
    if q == 0 or n < 3:
        return []
    if kperp is None:
        kperp = inp.kperp()
    dim_s = len(sym_basis(n, q))
    # pair index -> list of (kperp row, coefficient)
    proj: Dict[int, List[Tuple[int, object]]] = {}
    for a, vec in enumerate(kperp.vectors()):
        for pair, c in vec.items():
            proj.setdefault(pair, []).append((a, c))
    p = F.characteristic
    cols = []
    for col in delta_images(n, 3, q - 1):
        acc: Dict[int, object] = {}
        for r, sign in col.items():
            pair, s = divmod(r, dim_s)
            for a, c in proj.get(pair, ()):
                key = a * dim_s + s
                acc[key] = acc.get(key, 0) + (c if sign > 0 else -c)
        if p:
            acc = {r: v % p for r, v in acc.items() if v % p}
        else:
            acc = {r: v for r, v in acc.items() if v}
        cols.append(acc)
    return cols


def koszul_dim_presentation(inp: KoszulInput, q: int) -> int:
    """dim W_q from the presentation Λ^3 V ⊗ S(-1) → (Λ^2 V / K) ⊗ S."""
    if q < 0:
        raise PreconditionError("degree q must be non-negative")
    n = inp.n
    kperp = inp.kperp()
    target = kperp.dim * len(sym_basis(n, q))
    if target == 0:
        return 0
    _guard(comb(n, 3) * len(sym_basis(n, q - 1)) if q else 0, f"π in degree {q}")
    return target - sparse_rank(presentation_columns(inp, q, kperp), inp.field)


def _dim_worker(args):
    inp, q, route = args
    return koszul_dim(inp, q) if route == "homology" else koszul_dim_presentation(inp, q)


def hilbert_table(inp: KoszulInput, q_max: int, route: str = "homology", threads: int = 1) -> GradedDimTable:
    """dim W_q for q = 0..q_max; raises InternalInconsistency if a zero is followed by a nonzero."""
    if q_max < 0:
        raise PreconditionError("q_max must be non-negative")
    if route not in ("homology", "presentation"):
        raise ValueError(f"unknown route {route!r}")
    jobs = [(inp, q, route) for q in range(q_max + 1)]
    if threads > 1 and q_max > 0:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(_dim_worker, jobs))
    else:
        values = [_dim_worker(j) for j in jobs]
    check_monotone_vanishing(values)
    return GradedDimTable(tuple(values))


def check_monotone_vanishing(values: Sequence[int]):
    seen_zero = None
    for q, v in enumerate(values):
        if v < 0:
            raise InternalInconsistency(f"negative dimension {v} in degree {q}")
        if seen_zero is not None and v:
            raise InternalInconsistency(f"W_{seen_zero} = 0 but W_{q} = {v}")
        if v == 0 and seen_zero is None:
            seen_zero = q


def vanishing_threshold(inp: KoszulInput, q_cap: int) -> Optional[int]:
    """Least q <= q_cap with W_q = 0, or None when W does not vanish up to q_cap."""
    for q in range(q_cap + 1):
        if koszul_dim(inp, q) == 0:
            return q
    return None
