"""Ordered bases of exterior and symmetric powers and the Koszul differentials.

Basis conventions (stable, see docs/format.md):

* wedge basis of Λ^p k^n: increasing index tuples in lexicographic order;
* symmetric basis of Sym^q k^n: exponent vectors summing to q, in
  lexicographic order with larger leading exponents first
  (x0^q, x0^(q-1) x1, ..., x_{n-1}^q);
* tensor products Λ^p ⊗ Sym^q are wedge-major: index = w * dim Sym^q + s.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

from .linalg import ExactMatrix, FieldSpec

Exponent = Tuple[int, ...]


class WedgeBasis:
    """Basis of Λ^p k^n; immutable after construction."""

    __slots__ = ("n", "p", "elements", "_index")

    def __init__(self, n: int, p: int):
        self.n, self.p = n, p
        self.elements: Tuple[Tuple[int, ...], ...] = tuple(combinations(range(n), p)) if p >= 0 else ()
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index_of(self, element: Sequence[int]) -> int:
        return self._index[tuple(element)]

    def element_at(self, k: int) -> Tuple[int, ...]:
        return self.elements[k]


def _exponents(n: int, q: int) -> Iterator[Exponent]:
    if n == 0:
        if q == 0:
            yield ()
        return
    if n == 1:
        yield (q,)
        return
    for a in range(q, -1, -1):
        for rest in _exponents(n - 1, q - a):
            yield (a,) + rest


class SymBasis:
    """Monomial basis of Sym^q k^n; immutable after construction."""

    __slots__ = ("n", "q", "elements", "_index")

    def __init__(self, n: int, q: int):
        self.n, self.q = n, q
        self.elements: Tuple[Exponent, ...] = tuple(_exponents(n, q)) if q >= 0 else ()
        self._index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index_of(self, element: Sequence[int]) -> int:
        return self._index[tuple(element)]

    def element_at(self, k: int) -> Exponent:
        return self.elements[k]


@lru_cache(maxsize=256)
def wedge_basis(n: int, p: int) -> WedgeBasis:
    return WedgeBasis(n, p)


@lru_cache(maxsize=256)
def sym_basis(n: int, q: int) -> SymBasis:
    return SymBasis(n, q)


@lru_cache(maxsize=256)
def _times_variable(n: int, q: int) -> Tuple[Tuple[int, ...], ...]:
    """table[s][i] = index in Sym^(q+1) of x_i * (s-th monomial of Sym^q)."""
    src, dst = sym_basis(n, q), sym_basis(n, q + 1)
    table = []
    for e in src.elements:
        row = []
        for i in range(n):
            f = list(e)
            f[i] += 1
            row.append(dst.index_of(f))
        table.append(tuple(row))
    return tuple(table)


def delta_images(n: int, p: int, q: int) -> List[Dict[int, int]]:
    """Columns of δ_{p,q}: Λ^p ⊗ Sym^q → Λ^(p-1) ⊗ Sym^(q+1) as sparse ±1 dicts.

    v_{i1}∧…∧v_{ip} ⊗ f ↦ Σ_j (-1)^(j-1) v_{i1}∧…(omit i_j)…∧v_{ip} ⊗ v_{ij} f.
    """
    src_w, dst_w = wedge_basis(n, p), wedge_basis(n, p - 1)
    dim_src_s = len(sym_basis(n, q))
    dim_dst_s = len(sym_basis(n, q + 1))
    mult = _times_variable(n, q)
    cols = []
    for w in src_w.elements:
        faces = []
        for j, ij in enumerate(w):
            face = dst_w.index_of(w[:j] + w[j + 1:])
            faces.append((face, ij, 1 if j % 2 == 0 else -1))
        for s in range(dim_src_s):
            ms = mult[s]
            cols.append({face * dim_dst_s + ms[ij]: sign for face, ij, sign in faces})
    return cols


def koszul_delta(n: int, p: int, q: int, field: FieldSpec = FieldSpec(0)) -> ExactMatrix:
    """Matrix of δ_{p,q} in the canonical bases (entries ±1, coerced into ``field``)."""
    if not 1 <= p <= n or q < 0:
        raise ValueError(f"koszul_delta needs 1 <= p <= n and q >= 0 (got n={n}, p={p}, q={q})")
    nrows = comb(n, p - 1) * len(sym_basis(n, q + 1))
    cols = delta_images(n, p, q)
    if field.characteristic:
        cols = [{r: field.coerce(v) for r, v in c.items()} for c in cols]
    return ExactMatrix.from_columns(nrows, cols)


def wedge_pairing(n: int) -> ExactMatrix:
    """Gram matrix of <e_i∧e_j, e_k^∨∧e_l^∨> in matched lexicographic bases (the identity)."""
    if n < 2:
        raise ValueError("wedge_pairing needs n >= 2")
    return ExactMatrix.identity(comb(n, 2))


def sym_multiply(n: int, q1: int, q2: int) -> ExactMatrix:
    """Multiplication Sym^q1 ⊗ Sym^q2 → Sym^(q1+q2); source index = s1 * dim Sym^q2 + s2."""
    if q1 < 0 or q2 < 0:
        raise ValueError("degrees must be non-negative")
    b1, b2, b3 = sym_basis(n, q1), sym_basis(n, q2), sym_basis(n, q1 + q2)
    cols = []
    for e1 in b1.elements:
        for e2 in b2.elements:
            cols.append({b3.index_of(tuple(a + b for a, b in zip(e1, e2))): 1})
    return ExactMatrix.from_columns(len(b3), cols)


# --------------------------------------------------------------------------
# helpers on Λ^2


def pair_index(n: int) -> Dict[Tuple[int, int], int]:
    return wedge_basis(n, 2)._index


def wedge2(a: Sequence, b: Sequence, add=lambda x, y: x + y, mul=lambda x, y: x * y, neg=lambda x: -x) -> List:
    """Plücker coordinates of a∧b in the lexicographic basis of Λ^2."""
    n = len(a)
    return [add(mul(a[i], b[j]), neg(mul(a[j], b[i]))) for i, j in combinations(range(n), 2)]


def skew_form(k: Mapping[int, object], n: int) -> List[List]:
    """The skew matrix Ω with Ω[i][j] = k_ij, Ω[j][i] = -k_ij, so <k, a∧b> = a^T Ω b."""
    om = [[0] * n for _ in range(n)]
    pairs = wedge_basis(n, 2).elements
    for idx, x in k.items():
        i, j = pairs[idx]
        om[i][j] = x
        om[j][i] = -x
    return om


def transform_wedge2(vec: Mapping[int, object], g: Sequence[Sequence], n: int) -> Dict[int, object]:
    """Apply Λ^2 g to a vector of Λ^2 k^n, where g acts on k^n by columns (e_i ↦ Σ_r g[r][i] e_r)."""
    pairs = wedge_basis(n, 2).elements
    idx = pair_index(n)
    out: Dict[int, object] = {}
    for p_idx, x in vec.items():
        i, j = pairs[p_idx]
        for r in range(n):
            gri = g[r][i]
            if not gri:
                continue
            for s in range(n):
                if r == s:
                    continue
                gsj = g[s][j]
                if not gsj:
                    continue
                c = x * gri * gsj
                if r < s:
                    key = idx[(r, s)]
                else:
                    key, c = idx[(s, r)], -c
                out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}
