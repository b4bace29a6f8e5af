"""Hyperplane arrangements, their degree-2 Orlik-Solomon relations and Chen ranks.

Hyperplanes are indexed 0..N-1 in input order and H^1 of the complement is
k^N with basis e_0..e_{N-1}. The relation space K^⊥ ⊆ Λ^2 k^N is spanned by
∂(e_i e_j e_k) = e_j∧e_k - e_i∧e_k + e_i∧e_j for triples inside one rank-2
flat; the Koszul module of K = ann(K^⊥) computes the Chen ranks:
θ_q = dim W_{q-2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import GradedDimTable, KoszulInput, hilbert_table, koszul_dim
from .errors import AxiomViolation, DuplicateHyperplane, InternalInconsistency, NonSimpleGraph, PreconditionError, ZeroForm
from .linalg import FieldSpec, SubspaceSpec, null_space, sparse_rank
from .multilinear import pair_index
from .resonance import ComponentSpec, check_isotropic

QQ = FieldSpec(0)


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    forms: Tuple[Tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.forms)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "forms": [[QQ.format(x) for x in f] for f in self.forms]}


def _normalise(form: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    lead = next(x for x in form if x)
    return tuple(x / lead for x in form)


def parse_arrangement(forms: Sequence[Sequence], ambient_dim: Optional[int] = None) -> Arrangement:
    """Validate and normalise (first nonzero coordinate 1) a list of linear forms."""
    if ambient_dim is None:
        if not forms:
            raise PreconditionError("ambient dimension required for an empty arrangement")
        ambient_dim = len(forms[0])
    out, seen = [], {}
    for idx, f in enumerate(forms):
        if len(f) != ambient_dim:
            raise PreconditionError(f"form {idx} has length {len(f)}, expected {ambient_dim}")
        fr = [Fraction(x) for x in f]
        if not any(fr):
            raise ZeroForm(f"form {idx} is zero")
        nf = _normalise(fr)
        if nf in seen:
            raise DuplicateHyperplane(f"forms {seen[nf]} and {idx} define the same hyperplane")
        seen[nf] = idx
        out.append(nf)
    return Arrangement(ambient_dim, tuple(out))


def rank2_flats(A: Arrangement) -> List[Tuple[int, ...]]:
    """Maximal sets of hyperplanes through a common codimension-2 subspace, sorted."""
    N = A.size
    flats = []
    assigned = set()
    for i, j in combinations(range(N), 2):
        if (i, j) in assigned:
            continue
        span = SubspaceSpec.span([A.forms[i], A.forms[j]], A.ambient_dim, QQ)
        members = tuple(h for h in range(N) if span.contains_vector(A.forms[h]))
        for pair in combinations(members, 2):
            assigned.add(pair)
        flats.append(members)
    return sorted(flats)


def _boundary(i: int, j: int, k: int, idx) -> Dict[int, int]:
    return {idx[(j, k)]: 1, idx[(i, k)]: -1, idx[(i, j)]: 1}


def brieskorn_map(A: Arrangement, flats: Optional[List[Tuple[int, ...]]] = None):
    """Columns of the cup product Λ^2 H^1 → A^2 = ⊕_X A^2_X, built from the Brieskorn splitting.

    A^2_X has basis e_{x1} e_h for h in X other than its least member x1; a pair
    e_a∧e_b inside X goes to u_b - u_a with u_{x1} = 0.
    """
    N = A.size
    if flats is None:
        flats = rank2_flats(A)
    idx = pair_index(N)
    coord: Dict[Tuple[int, int], int] = {}
    offset = 0
    for X in flats:
        for h in X[1:]:
            coord[(X[0], h)] = offset
            offset += 1
    cols: List[Dict[int, int]] = [{} for _ in range(comb(N, 2))]
    for X in flats:
        x1 = X[0]
        for a, b in combinations(X, 2):
            col = {}
            col[coord[(x1, b)]] = 1
            if a != x1:
                col[coord[(x1, a)]] = -1
            cols[idx[(a, b)]] = col
    return offset, cols


def os_kperp(A: Arrangement, check: bool = True) -> SubspaceSpec:
    """Degree-2 Orlik-Solomon relations inside Λ^2 k^N."""
    N = A.size
    flats = rank2_flats(A)
    if N < 2:
        return SubspaceSpec.zero(comb(N, 2), QQ)
    idx = pair_index(N)
    gens = [_boundary(i, j, k, idx) for X in flats if len(X) >= 3 for i, j, k in combinations(X, 3)]
    kperp = SubspaceSpec.span(gens, comb(N, 2), QQ)
    if check:
        nrows, cols = brieskorn_map(A, flats)
        rows: List[Dict[int, int]] = [{} for _ in range(nrows)]
        for c, col in enumerate(cols):
            for r, v in col.items():
                rows[r][c] = v
        kernel = SubspaceSpec.span(null_space(rows, comb(N, 2), QQ), comb(N, 2), QQ)
        if kernel != kperp:
            raise InternalInconsistency("Orlik-Solomon relations disagree with the cup-product kernel")
    return kperp


def arrangement_input(A: Arrangement) -> KoszulInput:
    return KoszulInput.from_kperp(A.size, os_kperp(A).vectors(), QQ)


def local_components(A: Arrangement) -> List[ComponentSpec]:
    N = A.size
    out = []
    for X in rank2_flats(A):
        if len(X) >= 3:
            vecs = [{X[0]: 1, h: -1} for h in X[1:]]
            out.append(ComponentSpec(SubspaceSpec.span(vecs, N, QQ)))
    return out


@dataclass(frozen=True)
class Multinet:
    classes: Tuple[Tuple[int, ...], ...]
    mults: Tuple[int, ...]
    d: int
    base_locus: Tuple[Tuple[int, ...], ...]
    u: Tuple[Tuple[int, ...], ...]
    component: ComponentSpec

    def to_json(self) -> dict:
        return {
            "k": len(self.classes),
            "d": self.d,
            "classes": [list(c) for c in self.classes],
            "multiplicities": list(self.mults),
            "base_locus": [list(x) for x in self.base_locus],
            "component_dim": self.component.dim,
            "axioms": {"1": "ok", "2": "ok", "3": "ok", "4": "unchecked"},
        }


def validate_multinet(A: Arrangement, partition: Sequence[Sequence[int]], mults: Optional[Sequence[int]] = None) -> Multinet:
    """Check axioms (1)-(3) of a multinet; connectivity (4) is not checked."""
    N = A.size
    if mults is None:
        mults = [1] * N
    if len(mults) != N or any(int(m) < 1 for m in mults):
        raise PreconditionError("one positive multiplicity per hyperplane is required")
    cls_of: Dict[int, int] = {}
    for c, block in enumerate(partition):
        for h in block:
            if not 0 <= h < N or h in cls_of:
                raise PreconditionError(f"hyperplane {h} is out of range or listed twice")
            cls_of[h] = c
    if len(cls_of) != N:
        raise PreconditionError("the partition must cover every hyperplane")
    k = len(partition)
    weights = [sum(mults[h] for h in block) for block in partition]
    if len(set(weights)) > 1:
        raise AxiomViolation(1, f"class weights {weights}")
    d = weights[0] if weights else 0
    flats = rank2_flats(A)
    base = tuple(X for X in flats if len({cls_of[h] for h in X}) >= 2)
    base_set = set(base)
    flat_of = {}
    for X in flats:
        for pair in combinations(X, 2):
            flat_of[pair] = X
    for a, b in combinations(range(N), 2):
        if cls_of[a] != cls_of[b] and flat_of[(a, b)] not in base_set:
            raise AxiomViolation(2, f"hyperplanes {a}, {b} meet outside the base locus")
    for X in base:
        sums = [sum(mults[h] for h in X if cls_of[h] == c) for c in range(k)]
        if len(set(sums)) > 1:
            raise AxiomViolation(3, f"flat {list(X)} has class weights {sums}")
    u = []
    for block in partition:
        vec = [0] * N
        for h in block:
            vec[h] = mults[h]
        u.append(tuple(vec))
    diffs = [[x - y for x, y in zip(u[t], u[0])] for t in range(1, k)]
    if not diffs:
        raise PreconditionError("a multinet needs at least two classes")
    comp = ComponentSpec(SubspaceSpec.span(diffs, N, QQ))
    return Multinet(tuple(tuple(b) for b in partition), tuple(int(m) for m in mults), d, base, tuple(u), comp)


def chen_ranks(A: Arrangement, q_max: int, threads: int = 1) -> GradedDimTable:
    """θ_q for q = 2..q_max (θ_1 = |A| is reported separately by callers)."""
    if q_max < 2:
        raise PreconditionError("Chen ranks start at q = 2")
    inp = arrangement_input(A)
    if inp.n == 0:
        return GradedDimTable((0,) * (q_max - 1), start=2)
    table = hilbert_table(inp, q_max - 2, threads=threads)
    return GradedDimTable(table.entries, start=2)


def free_group_chen(n: int, q: int) -> int:
    """θ_q(F_n) = (q-1) C(n+q-2, q)."""
    return (q - 1) * comb(n + q - 2, q)


def suciu_formula(h: Mapping[int, int], q: int) -> int:
    if q < 2:
        raise PreconditionError("q must be at least 2")
    return (q - 1) * sum(cnt * comb(m + q - 2, q) for m, cnt in h.items() if m >= 2)


def component_histogram(comps: Sequence[ComponentSpec]) -> Dict[int, int]:
    h: Dict[int, int] = {}
    for c in comps:
        h[c.dim] = h.get(c.dim, 0) + 1
    return dict(sorted(h.items()))


# --------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class GraphicReport:
    arrangement: Arrangement
    kappa: Tuple[int, int, int]
    formula: Dict[int, int]
    computed: Dict[int, int]

    @property
    def agrees(self) -> bool:
        return all(self.computed[q] == self.formula[q] for q in self.computed)

    def to_json(self) -> dict:
        return {
            "kappa2": self.kappa[0],
            "kappa3": self.kappa[1],
            "kappa4": self.kappa[2],
            "from_degree": max(self.kappa[0] - 1, 2),
            "formula": {str(q): v for q, v in self.formula.items()},
            "computed": {str(q): v for q, v in self.computed.items()},
            "agrees": self.agrees,
        }


def graph_arrangement(vertices: int, edges: Sequence[Sequence[int]]) -> Arrangement:
    seen = set()
    forms = []
    for e in edges:
        if len(e) != 2:
            raise NonSimpleGraph(f"edge {e} does not have two endpoints")
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise NonSimpleGraph(f"loop at vertex {i}")
        if not (0 <= i < vertices and 0 <= j < vertices):
            raise NonSimpleGraph(f"edge {e} leaves the vertex range")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise NonSimpleGraph(f"repeated edge {list(key)}")
        seen.add(key)
        f = [0] * vertices
        f[i], f[j] = 1, -1
        forms.append(f)
    return parse_arrangement(forms, vertices)


def count_cliques(vertices: int, edges: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    adj = {v: set() for v in range(vertices)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    k3 = sum(1 for a, b, c in combinations(range(vertices), 3) if b in adj[a] and c in adj[a] and c in adj[b])
    k4 = sum(
        1
        for quad in combinations(range(vertices), 4)
        if all(y in adj[x] for x, y in combinations(quad, 2))
    )
    return len(edges), k3, k4


def graphic(vertices: int, edges: Sequence[Sequence[int]], q_max: int, verify: bool = True) -> GraphicReport:
    """θ_q = (q-1)(κ3+κ4) for q >= κ2-1, compared with direct Koszul computation."""
    A = graph_arrangement(vertices, edges)
    k2, k3, k4 = count_cliques(vertices, edges)
    start = max(k2 - 1, 2)
    formula = {q: (q - 1) * (k3 + k4) for q in range(start, q_max + 1)}
    computed: Dict[int, int] = {}
    if verify and A.size:
        inp = arrangement_input(A)
        for q in formula:
            computed[q] = koszul_dim(inp, q - 2)
    elif verify:
        computed = {q: 0 for q in formula}
    return GraphicReport(A, (k2, k3, k4), formula, computed)


def components_isotropic(A: Arrangement, comps: Sequence[ComponentSpec]) -> List[bool]:
    return check_isotropic(arrangement_input(A), comps)
