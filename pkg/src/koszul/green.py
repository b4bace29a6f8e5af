"""Clebsch-Gordan Koszul modules and generic canonical Betti tables.

U is a 2-dimensional space with basis x, y and V = Sym^m U with m = i + 2.
The monomial basis of V is indexed by s = 0..m with e_s = x^(m-s) y^s, which
is the order used by :mod:`koszul.multilinear` for two variables.

K = Sym^(2m-2) U sits inside Λ^2 V as the top Clebsch-Gordan summand. It is
built here twice: as the orbit of the highest weight vector x^m ∧ x^(m-1)y
under divided powers of the lowering operator F = y ∂/∂x, and as the
annihilator of the kernel of the Jacobian (Gaussian) map
f ∧ g ↦ f_x g_y - f_y g_x.  The genus-g reading of W_q is q = g - 3 - i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional

from .core import GradedDimTable, KoszulInput, hilbert_table, koszul_dim
from .errors import InternalInconsistency, PreconditionError, RankDeficient
from .linalg import ExactMatrix, FieldSpec, SubspaceSpec, annihilator, null_space
from .multilinear import pair_index, wedge_basis


@dataclass(frozen=True)
class CGParams:
    i: int
    field: FieldSpec = FieldSpec(0)

    def __post_init__(self):
        if not isinstance(self.i, int) or self.i < 1:
            raise PreconditionError(f"i must be an integer >= 1, got {self.i!r}")

    @property
    def m(self) -> int:
        return self.i + 2

    @property
    def n(self) -> int:
        return self.i + 3

    @property
    def g_odd(self) -> int:
        return 2 * self.i + 3

    @property
    def expected_dim(self) -> int:
        return 2 * self.i + 3

    @property
    def experimental(self) -> bool:
        """True in characteristics 0 < p < m, where the integral model is unverified."""
        p = self.field.characteristic
        return 0 < p < self.m


def orbit_vectors(m: int) -> List[Dict[int, int]]:
    """Integral vectors F^(k)(x^m ∧ x^(m-1) y), k = 0..2m-2, in the wedge basis of Λ^2 Sym^m U.

    F^(j)(x^a y^b) = C(a, j) x^(a-j) y^(b+j), and divided powers satisfy the
    Leibniz rule F^(k)(u ∧ v) = Σ_j F^(j) u ∧ F^(k-j) v.
    """
    idx = pair_index(m + 1)
    out = []
    for k in range(2 * m - 1):
        vec: Dict[int, int] = {}
        for j in range(k + 1):
            s, t = j, 1 + k - j
            if s > m or t > m or s == t:
                continue
            c = comb(m, j) * comb(m - 1, k - j)
            if not c:
                continue
            if s < t:
                key = idx[(s, t)]
            else:
                key, c = idx[(t, s)], -c
            vec[key] = vec.get(key, 0) + c
        out.append({key: v for key, v in vec.items() if v})
    return out


def raise_operator_wedge(vec: Dict[int, int], m: int) -> Dict[int, int]:
    """E = x ∂/∂y applied to a vector of Λ^2 Sym^m U (E e_s = s e_(s-1))."""
    pairs = wedge_basis(m + 1, 2).elements
    idx = pair_index(m + 1)
    out: Dict[int, int] = {}
    for key, c in vec.items():
        s, t = pairs[key]
        for a, b, coef in ((s - 1, t, s), (s, t - 1, t)):
            if coef == 0 or a < 0 or a == b:
                continue
            val = c * coef
            if a < b:
                k2 = idx[(a, b)]
            else:
                k2, val = idx[(b, a)], -val
            out[k2] = out.get(k2, 0) + val
    return {k: v for k, v in out.items() if v}


def cg_span(params: CGParams) -> SubspaceSpec:
    """The reduced orbit span, whatever its dimension."""
    m, F = params.m, params.field
    return SubspaceSpec.span(orbit_vectors(m), comb(m + 1, 2), F)


def cg_subspace(params: CGParams) -> SubspaceSpec:
    """K = Sym^(2i+2) U ⊆ Λ^2 Sym^(i+2) U; raises RankDeficient if reduction mod p loses rank."""
    K = cg_span(params)
    if K.dim < params.expected_dim:
        raise RankDeficient(params.expected_dim, K.dim, params.field.characteristic)
    return K


def jacobian_matrix(d: int) -> ExactMatrix:
    """Matrix of Λ^2 Sym^d U → Sym^(2d-2) U, f ∧ g ↦ f_x g_y - f_y g_x, in monomial bases."""
    pairs = wedge_basis(d + 1, 2).elements
    entries = {}
    for col, (s, t) in enumerate(pairs):
        # f = x^(d-s) y^s, g = x^(d-t) y^t
        c = (d - s) * t - s * (d - t)
        if c:
            entries[(s + t - 1, col)] = c
    return ExactMatrix(2 * d - 1, len(pairs), entries)


def sym_pairing(d: int, F: FieldSpec) -> List[List]:
    """The invariant pairing <x^a y^(d-a), x^b y^(d-b)> = (-1)^a C(d,a)^(-1) δ_(a+b,d) in s-indices."""
    out = [[F.zero()] * (d + 1) for _ in range(d + 1)]
    for s in range(d + 1):
        a = d - s
        val = Fraction((-1) ** a, comb(d, a))
        out[s][d - s] = F.coerce(val)
    return out


def wedge_sym_pairing(d: int, F: FieldSpec) -> ExactMatrix:
    """Pairing on Λ^2 Sym^d U induced by sym_pairing: <u1∧u2, w1∧w2> = det(<ui, wj>)."""
    P = sym_pairing(d, F)
    pairs = wedge_basis(d + 1, 2).elements
    entries = {}
    for r, (a, b) in enumerate(pairs):
        for c, (u, v) in enumerate(pairs):
            val = F.sub(F.mul(P[a][u], P[b][v]), F.mul(P[a][v], P[b][u]))
            if val:
                entries[(r, c)] = val
    return ExactMatrix(len(pairs), len(pairs), entries)


def wronskian_kperp(d: int, F: FieldSpec = FieldSpec(0)) -> SubspaceSpec:
    """Kernel of the Jacobian map on Λ^2 Sym^d U."""
    if d < 2:
        raise PreconditionError("wronskian_kperp needs d >= 2")
    J = jacobian_matrix(d)
    N = comb(d + 1, 2)
    return SubspaceSpec.span(null_space(J.rows(), N, F), N, F)


def cg_subspace_wronskian(params: CGParams) -> SubspaceSpec:
    """K recovered as the annihilator of the Jacobian kernel under the invariant pairing."""
    d, F = params.m, params.field
    if F.characteristic and d % F.characteristic == 0:
        raise PreconditionError(f"the invariant pairing on Sym^{d} is undefined in characteristic {F.characteristic}")
    kernel = wronskian_kperp(d, F)
    pairing = wedge_sym_pairing(d, F).transpose()
    return annihilator(kernel, pairing)


def cg_input(params: CGParams, route: str = "orbit") -> KoszulInput:
    if route == "orbit":
        K = cg_subspace(params)
    elif route == "wronskian":
        K = cg_subspace_wronskian(params)
    elif route == "both":
        K = cg_subspace(params)
        other = cg_subspace_wronskian(params)
        if K != other:
            raise InternalInconsistency(f"orbit and Jacobian constructions differ for i={params.i}")
    else:
        raise ValueError(f"unknown route {route!r}")
    return KoszulInput(params.field, params.n, K)


def green_dims(params: CGParams, q_max: int, route: str = "orbit", threads: int = 1) -> GradedDimTable:
    """dim W_q of the Clebsch-Gordan module for q = 0..q_max (genus q + i + 3)."""
    return hilbert_table(cg_input(params, route), q_max, threads=threads)


def charp_green(params: CGParams, q: int) -> int:
    if not params.field.characteristic:
        raise PreconditionError("charp_green needs a prime characteristic")
    return koszul_dim(cg_input(params), q)


# --------------------------------------------------------------------------
# Betti numbers


@dataclass(frozen=True)
class BettiTable:
    g: int
    row1: tuple  # b_{p,1}, p = 1..g-2
    row2: tuple  # b_{p,2}, p = 1..g-2

    def b(self, p: int, q: int) -> int:
        if not 1 <= p <= self.g - 2:
            return 0
        if q == 1:
            return self.row1[p - 1]
        if q == 2:
            return self.row2[p - 1]
        raise KeyError(q)

    def to_json(self) -> dict:
        return {
            "genus": self.g,
            "b1": {str(p): v for p, v in enumerate(self.row1, 1)},
            "b2": {str(p): v for p, v in enumerate(self.row2, 1)},
        }

    def render(self) -> str:
        """Aligned text table: rows 0..3, columns p = 0..g-2."""
        g = self.g
        cols = list(range(g - 1))
        grid = [
            ["1"] + ["-"] * (g - 2),
            ["-"] + [str(v) if v else "-" for v in self.row1],
            ["-"] + [str(v) if v else "-" for v in self.row2],
            ["-"] * (g - 2) + ["1"],
        ]
        width = max(len(c) for row in grid for c in row + [str(p) for p in cols])
        lines = ["   " + " ".join(str(p).rjust(width) for p in cols)]
        for r, row in enumerate(grid):
            lines.append(f"{r}: " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def _difference_formula(g: int, p: int) -> int:
    num = (g - 2 * p - 1) * (g - p - 1) * comb(g - 1, p - 1)
    if num % (p + 1):
        raise InternalInconsistency(f"non-integral Betti value at g={g}, p={p}")
    return num // (p + 1)


def betti_generic_canonical(g: int) -> BettiTable:
    if g < 3:
        raise PreconditionError("genus must be at least 3")
    top = (g - 2) // 2  # ceil((g-3)/2)
    row1 = tuple(_difference_formula(g, p) if 1 <= p <= top else 0 for p in range(1, g - 1))
    row2 = tuple(row1[g - p - 3] if 1 <= g - p - 2 <= g - 2 else 0 for p in range(1, g - 1))
    table = BettiTable(g, row1, row2)
    for p in range(2, g - 1):
        if table.b(p, 1) and table.b(p - 1, 2):
            raise InternalInconsistency(f"b_{p},1 and b_{p - 1},2 both nonzero at g={g}")
    return table


def scroll_betti(g: int, k: int, p: int) -> int:
    """Eagon-Northcott value p C(g-k+1, p+1) for a k-gonal curve's scroll."""
    if k < 2 or p < 1:
        raise PreconditionError("need k >= 2 and p >= 1")
    if g - k + 1 < 0:
        return 0
    return p * comb(g - k + 1, p + 1)


def hermite_dim_check(d: int, i: int) -> bool:
    """dim Sym^d(Sym^i U) = dim Λ^i(Sym^(d+i-1) U), counted independently."""
    if d < 0 or i < 0:
        raise PreconditionError("d and i must be non-negative")
    lhs = comb((i + 1) + d - 1, d)  # Sym^d of an (i+1)-dimensional space
    rhs = comb(d + i, i)  # Λ^i of a (d+i)-dimensional space
    return lhs == rhs


def green_betti_consistency(i: int) -> Dict[int, tuple]:
    """Compare W_q(CG_i) with b_{i,2} of the generic curve of genus q+i+3, for genera i+3..2i+2."""
    table = green_dims(CGParams(i), max(i - 1, 0))
    out = {}
    for g in range(i + 3, 2 * i + 3):
        q = g - 3 - i
        out[g] = (table[q], betti_generic_canonical(g).b(i, 2))
    return out
