"""Tor over the exterior algebra, as an independent check on Koszul modules.

E = Λ V^∨ is graded with its generators in degree 1 and A(K) = E / (K^⊥).
A minimal free resolution F_• → A is built one homological step at a time,
truncated at a fixed internal degree, and dim Tor_i(A, k)_j is the number of
degree-j generators of F_i. With this positive grading,
dim Tor_{q+1}(A, k)_{q+2} = dim W_q(V, K).

Free modules are right E-modules. An element is a dict keyed by
(generator, monomial) with monomials stored as bitmasks of variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

from .core import KoszulInput
from .errors import BudgetExceeded, InternalInconsistency, PreconditionError
from .linalg import Echelon, FieldSpec, budget, null_space
from .multilinear import wedge_basis

Key = Tuple[int, int]  # (generator index, monomial bitmask)


def _monomials(n: int, deg: int) -> List[int]:
    return [sum(1 << i for i in c) for c in combinations(range(n), deg)]


def _wedge_sign(s: int, t: int) -> int:
    """Sign of e_S ∧ e_T = ± e_{S ∪ T}, counting pairs s in S, t in T with s > t."""
    inv = 0
    for i in range(t.bit_length()):
        if t >> i & 1:
            inv += bin(s >> (i + 1)).count("1")
    return -1 if inv & 1 else 1


def _right_mul(elem: Dict[Key, object], mono: int, F: FieldSpec) -> Dict[Key, object]:
    out: Dict[Key, object] = {}
    for (g, m), c in elem.items():
        if m & mono:
            continue
        sgn = _wedge_sign(m, mono)
        out[(g, m | mono)] = c if sgn > 0 else F.neg(c)
    return out


@dataclass
class _FreeModule:
    degrees: List[int]  # degree of each generator
    images: List[Dict[Key, object]]  # image of each generator in the previous module

    def basis(self, n: int, j: int) -> List[Key]:
        out = []
        for g, d in enumerate(self.degrees):
            if 0 <= j - d <= n:
                out.extend((g, m) for m in _monomials(n, j - d))
        return out


@dataclass(frozen=True)
class TorTable:
    n: int
    i_max: int
    max_degree: int
    dims: Tuple[Tuple[Tuple[int, int], ...], ...]  # per i: ((degree, dim), ...)

    def get(self, i: int, j: int) -> int:
        return dict(self.dims[i]).get(j, 0)

    def koszul_dims(self) -> Dict[int, int]:
        """dim W_q = dim Tor_{q+1}(A, k)_{q+2} for q = 0..i_max-1."""
        return {q: self.get(q + 1, q + 2) for q in range(self.i_max)}

    def to_json(self) -> dict:
        return {
            "grading": "generators of E in degree 1; Tor_{q+1} in degree q+2 is dual to W_q",
            "max_degree": self.max_degree,
            "tor": {str(i): {str(j): d for j, d in row} for i, row in enumerate(self.dims)},
        }


def exterior_tor(inp: KoszulInput, i_max: int, limit: int = None) -> TorTable:
    """Graded dimensions of Tor_i^E(A(K), k) for i <= i_max, internal degree <= i_max + 1."""
    if i_max < 1:
        raise PreconditionError("i_max must be at least 1")
    n, F = inp.n, inp.field
    limit = min(budget(), 20000) if limit is None else limit
    D = i_max + 1
    kperp = inp.kperp() if n >= 2 else None
    pairs = wedge_basis(n, 2).elements
    modules: List[_FreeModule] = [_FreeModule([0], [{}])]
    # F_1: the relations K^⊥, in degree 2, mapping into F_0 = E
    gens1 = []
    if kperp is not None:
        for vec in kperp.vectors():
            gens1.append({(0, (1 << pairs[p][0]) | (1 << pairs[p][1])): c for p, c in vec.items()})
    modules.append(_FreeModule([2] * len(gens1), gens1))
    for i in range(1, i_max):
        src = modules[i]
        new_deg, new_img = [], []
        for j in range(D + 1):
            B = src.basis(n, j)
            if not B:
                continue
            if len(B) > limit:
                raise BudgetExceeded(f"resolution step {i}, degree {j}", len(B), limit)
            pos = {k: t for t, k in enumerate(B)}
            # d_i on the degree-j piece of F_i
            tgt_index: Dict[Key, int] = {}
            rows: Dict[int, Dict[int, object]] = {}
            for t, (g, m) in enumerate(B):
                for key, c in _right_mul(src.images[g], m, F).items():
                    r = tgt_index.setdefault(key, len(tgt_index))
                    rows.setdefault(r, {})[t] = c
            kernel = null_space(list(rows.values()), len(B), F)
            ech = Echelon(F)
            for g, (dg, img) in enumerate(zip(new_deg, new_img)):
                for m in _monomials(n, j - dg) if 0 <= j - dg <= n else []:
                    ech.add({pos[k]: c for k, c in _right_mul(img, m, F).items()})
            for vec in kernel:
                if ech.add(vec):
                    elem = {B[t]: c for t, c in vec.items()}
                    if any(src.degrees[g] >= j for g, _ in elem):
                        raise InternalInconsistency("non-minimal differential: unit entry in resolution")
                    new_deg.append(j)
                    new_img.append(elem)
        modules.append(_FreeModule(new_deg, new_img))
    dims = []
    for mod in modules[: i_max + 1]:
        counts: Dict[int, int] = {}
        for d in mod.degrees:
            if d <= D:
                counts[d] = counts.get(d, 0) + 1
        dims.append(tuple(sorted(counts.items())))
    return TorTable(n, i_max, D, tuple(dims))
