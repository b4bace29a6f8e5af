"""Resonance of a pair (V, K) and the linear structure of its components.

An element a of V^∨ is resonant when a ∧ b is a nonzero element of K^⊥ for
some b. Since <k, a∧b> = a^T Ω_k b with Ω_k the skew matrix of k, finding a
partner b for a fixed a is a linear problem; the searches below enumerate a
and solve for b.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .core import KoszulInput, free_module_dim, koszul_dim
from .errors import BudgetExceeded, DimensionMismatch, InternalInconsistency, PreconditionError, PreconditionFailed
from .linalg import FieldSpec, GaloisField, SubspaceSpec, budget, null_space
from .multilinear import pair_index, skew_form, wedge2, wedge_basis

log = logging.getLogger(__name__)

TRIVIAL, NONTRIVIAL, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class Witness:
    """A pair (a, b) with a ∧ b a nonzero element of K^⊥.

    Coordinates are field scalars; over GF(p^k) with k > 1 they are integers
    whose base-p digits are polynomial coefficients modulo ``modulus``.
    """

    a: Tuple
    b: Tuple
    characteristic: int
    degree: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    def to_json(self) -> dict:
        def fmt(x):
            return str(x) if isinstance(x, Fraction) else x

        out = {"a": [fmt(x) for x in self.a], "b": [fmt(x) for x in self.b], "char": self.characteristic}
        if self.degree > 1:
            out["extension_degree"] = self.degree
            out["modulus"] = list(self.modulus)
        return out


@dataclass(frozen=True)
class ResonanceReport:
    trivial: str
    method: str
    witness: Optional[Witness] = None
    evidence: Dict[str, object] = dc_field(default_factory=dict)

    def __post_init__(self):
        if (self.witness is not None) != (self.trivial == NONTRIVIAL):
            raise InternalInconsistency("a witness must accompany exactly the 'no' verdicts")

    def to_json(self) -> dict:
        return {
            "trivial": self.trivial,
            "method": self.method,
            "witness": self.witness.to_json() if self.witness else None,
            "evidence": self.evidence,
        }


# --------------------------------------------------------------------------
# witness verification


def verify_witness(kperp: SubspaceSpec, w: Witness) -> bool:
    """Recheck a ∧ b ≠ 0 and a ∧ b ∈ K^⊥ via Plücker coordinates, independent of the search."""
    n = len(w.a)
    if kperp.ambient_dim != comb(n, 2):
        raise DimensionMismatch("witness length does not match K^⊥")
    if w.degree == 1:
        F = FieldSpec(w.characteristic)
        a = [F.coerce(x) for x in w.a]
        b = [F.coerce(x) for x in w.b]
        plu = wedge2(a, b, F.add, F.mul, F.neg)
        if not any(plu):
            return False
        return kperp.contains_vector(plu)
    gf = GaloisField(w.characteristic, w.degree)
    plu = wedge2(list(w.a), list(w.b), gf.add, gf.mul, gf.neg)
    if not any(plu):
        return False
    # plu lies in K^⊥ ⊗ GF(p^k) iff it pairs to zero with every vector of K = ann(K^⊥)
    K = kperp.orthogonal()
    for kvec in K.vectors():
        acc = 0
        for idx, c in kvec.items():
            acc = gf.add(acc, gf.mul(gf.embed(int(c)), plu[idx]))
        if acc:
            return False
    return True


# --------------------------------------------------------------------------
# searches


def _projective_points(q: int, n: int):
    """Normalised representatives of P^(n-1)(F_q): first nonzero coordinate equal to 1."""
    for lead in range(n):
        for tail in product(range(q), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def decomposable_search(kperp: SubspaceSpec, F: FieldSpec, k_max: int = 1, limit: Optional[int] = None) -> Optional[Witness]:
    """Look for a ∧ b ∈ K^⊥ \\ {0} over GF(p^k), k = 1..k_max.

    Points a of P^(n-1) are enumerated in a fixed order; for each, the space of
    b with a ∧ b ∈ K^⊥ is a null space. The first a with a partner outside
    span(a) wins, so the result is deterministic. Raises BudgetExceeded when
    the number of points to scan exceeds ``limit`` (default: the global budget).
    """
    p = F.characteristic
    if not p:
        raise PreconditionError("decomposable_search works over finite fields only")
    if kperp.field != F:
        raise DimensionMismatch("K^⊥ is not defined over the search field")
    N = kperp.ambient_dim
    n = _dim_from_wedge2(N)
    if kperp.dim == 0:
        return None
    limit = budget() if limit is None else limit
    K = kperp.orthogonal()
    omegas = [skew_form(v, n) for v in K.vectors()]
    for k in range(1, k_max + 1):
        q = p ** k
        npoints = (q ** n - 1) // (q - 1)
        if npoints > limit:
            raise BudgetExceeded(f"decomposable search over GF({p}^{k})", npoints, limit)
        gf = GaloisField(p, k)
        om = [[[gf.embed(int(x)) for x in row] for row in o] for o in omegas]
        for a in _projective_points(q, n):
            rows = []
            for o in om:
                row = []
                for j in range(n):
                    acc = 0
                    for i in range(n):
                        if a[i] and o[i][j]:
                            acc = gf.add(acc, gf.mul(a[i], o[i][j]))
                    row.append(acc)
                rows.append(row)
            sols = gf.null_space(rows, n) if rows else [[int(i == j) for j in range(n)] for i in range(n)]
            if len(sols) < 2:
                continue
            lead = a.index(1)
            for b in sols:
                # make b independent of a: clear the lead coordinate
                c = b[lead]
                b2 = [gf.sub(x, gf.mul(c, y)) for x, y in zip(b, a)]
                if any(b2):
                    w = Witness(tuple(a), tuple(b2), p, k, gf.modulus if k > 1 else None)
                    return w
    return None


def rational_search(kperp: SubspaceSpec, box: int = 1, limit: Optional[int] = None) -> Optional[Witness]:
    """Best-effort witness search over Q: a ranges over integer vectors with entries in [-box, box]."""
    F = kperp.field
    N = kperp.ambient_dim
    n = _dim_from_wedge2(N)
    if kperp.dim == 0:
        return None
    limit = budget() if limit is None else limit
    count = ((2 * box + 1) ** n - 1) // 2
    if count > limit:
        raise BudgetExceeded("rational decomposable search", count, limit)
    K = kperp.orthogonal()
    omegas = [skew_form(v, n) for v in K.vectors()]
    for lead in range(n):
        for tail in product(range(-box, box + 1), repeat=n - lead - 1):
            a = (0,) * lead + (1,) + tail
            rows = [{j: sum(a[i] * o[i][j] for i in range(n) if a[i]) for j in range(n)} for o in omegas]
            for b in null_space(rows, n, F):
                c = b.get(lead, 0)
                b2 = [F.sub(b.get(j, F.zero()), F.mul(c, a[j])) for j in range(n)]
                if any(b2):
                    return Witness(tuple(Fraction(x) for x in a), tuple(b2), 0)
    return None


def _dim_from_wedge2(N: int) -> int:
    n = 0
    while comb(n, 2) < N:
        n += 1
    if comb(n, 2) != N or n < 2:
        raise DimensionMismatch(f"{N} is not of the form C(n, 2)")
    return n


def is_resonance_trivial(inp: KoszulInput, k_max: int = 1, search_limit: Optional[int] = None) -> ResonanceReport:
    """Decide R(V, K) = {0} where the vanishing theorem applies, else search and report evidence."""
    n, F = inp.n, inp.field
    if n < 3:
        raise PreconditionError("resonance triviality needs n >= 3")
    p = F.characteristic
    kperp = inp.kperp()
    if p == 0 or p >= n - 2:
        w = koszul_dim(inp, n - 3)
        evidence = {"q": n - 3, "dim_W": w}
        if w == 0:
            return ResonanceReport(TRIVIAL, "vanishing-theorem", None, evidence)
        witness = _search_quietly(kperp, F, k_max, search_limit)
        if witness is None:
            evidence["witness_search"] = "exhausted without a witness"
            return ResonanceReport(UNKNOWN, "vanishing-theorem", None, evidence)
        return ResonanceReport(NONTRIVIAL, "vanishing-theorem", witness, evidence)
    witness = _search_quietly(kperp, F, k_max, search_limit)
    if witness is not None:
        return ResonanceReport(NONTRIVIAL, "finite-field-enumeration", witness, {"k_max": k_max})
    q = 2 * n - 7
    evidence = {"q": q, "dim_W": koszul_dim(inp, q), "k_max": k_max}
    evidence["forces_nontrivial"] = evidence["dim_W"] != 0
    return ResonanceReport(UNKNOWN, "rv-bound-only", None, evidence)


def _search_quietly(kperp, F, k_max, limit):
    try:
        if F.characteristic:
            w = decomposable_search(kperp, F, k_max, limit)
        else:
            w = rational_search(kperp, 1, limit)
    except BudgetExceeded as exc:
        log.info("witness search abandoned: %s", exc)
        return None
    if w is not None and not verify_witness(kperp, w):
        raise InternalInconsistency(f"search returned an invalid witness {w}")
    return w


# --------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class ComponentSpec:
    """A linear subspace of V^∨; the quotient V ↠ V̄ is dual to the inclusion."""

    subspace: SubspaceSpec

    def __post_init__(self):
        if self.subspace.dim < 1:
            raise PreconditionError("a component has dimension at least 1")

    @classmethod
    def span(cls, vectors, n: int, field: FieldSpec = FieldSpec(0)) -> "ComponentSpec":
        return cls(SubspaceSpec.span(vectors, n, field))

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _check_comp(inp: KoszulInput, comp: ComponentSpec):
    if comp.subspace.ambient_dim != inp.n:
        raise DimensionMismatch(f"component lives in dimension {comp.subspace.ambient_dim}, expected {inp.n}")
    if comp.subspace.field != inp.field:
        raise DimensionMismatch("component is not defined over the input field")


def _wedge_span(A: Sequence[dict], B: Sequence[dict], n: int, F: FieldSpec) -> SubspaceSpec:
    vecs = []
    for a in A:
        da = [a.get(i, F.zero()) for i in range(n)]
        for b in B:
            db = [b.get(i, F.zero()) for i in range(n)]
            vecs.append(wedge2(da, db, F.add, F.mul, F.neg))
    return SubspaceSpec.span(vecs, comb(n, 2), F)


def wedge2_of(comp: ComponentSpec) -> SubspaceSpec:
    S = comp.subspace
    n, F = S.ambient_dim, S.field
    dense = [list(b) for b in S.basis]
    vecs = [wedge2(a, b, F.add, F.mul, F.neg) for a, b in combinations(dense, 2)]
    return SubspaceSpec.span(vecs, comb(n, 2), F)


def check_isotropic(inp: KoszulInput, comps: Sequence[ComponentSpec]) -> List[bool]:
    """Λ^2 C ⊆ K^⊥ for each component C."""
    kperp = inp.kperp()
    out = []
    for c in comps:
        _check_comp(inp, c)
        out.append(kperp.contains(wedge2_of(c)))
    return out


def _separable_by_intersection(inp: KoszulInput, comp: ComponentSpec, kperp: SubspaceSpec) -> bool:
    n, F = inp.n, inp.field
    unit = [{j: F.one()} for j in range(n)]
    cv = _wedge_span(comp.subspace.vectors(), unit, n, F)
    meet = cv & kperp
    return wedge2_of(comp).contains(meet)


def _completed_basis(comp: ComponentSpec) -> List[List]:
    """Rows: a basis of C followed by standard vectors completing it to a basis of V^∨."""
    S = comp.subspace
    n, F = S.ambient_dim, S.field
    rows = [list(b) for b in S.basis]
    piv = set(S.pivots())
    for j in range(n):
        if j not in piv:
            rows.append([F.one() if t == j else F.zero() for t in range(n)])
    return rows


def _separable_by_projection(inp: KoszulInput, comp: ComponentSpec) -> bool:
    """Petri-like test: after V^∨ = C ⊕ H', Λ^2 V^∨ = L ⊕ M ⊕ Λ^2 H' with L = Λ^2 C and
    M = C ⊗ H'. Separability says the image of K in (L ⊕ M)^∨ contains M^∨; for an
    isotropic component this is surjectivity of p_M: K → M^∨."""
    n, F = inp.n, inp.field
    r = comp.dim
    B = _completed_basis(comp)
    L = [(s, t) for s, t in combinations(range(n), 2) if t < r]
    M = [(s, t) for s, t in combinations(range(n), 2) if s < r <= t]
    if not M:
        return True
    coords = L + M
    images = []
    for kvec in inp.K.vectors():
        om = skew_form(kvec, n)
        row = {}
        for c, (s, t) in enumerate(coords):
            acc = F.zero()
            a, b = B[s], B[t]
            for i in range(n):
                if not a[i]:
                    continue
                for j in range(n):
                    if om[i][j] and b[j]:
                        acc = F.add(acc, F.mul(F.mul(a[i], om[i][j]), b[j]))
            if acc:
                row[c] = acc
        images.append(row)
    image = SubspaceSpec.span(images, len(coords), F)
    return all(image.contains_vector({len(L) + j: F.one()}) for j in range(len(M)))


def check_separable(inp: KoszulInput, comps: Sequence[ComponentSpec]) -> List[bool]:
    """(C ∧ V^∨) ∩ K^⊥ ⊆ Λ^2 C, decided twice; disagreement is an internal error."""
    kperp = inp.kperp()
    out = []
    for c in comps:
        _check_comp(inp, c)
        first = _separable_by_intersection(inp, c, kperp)
        second = _separable_by_projection(inp, c)
        if first != second:
            raise InternalInconsistency(f"separability formulations disagree ({first} vs {second})")
        out.append(first)
    return out


def is_strongly_isotropic(inp: KoszulInput, comps: Sequence[ComponentSpec]) -> List[bool]:
    return [a and b for a, b in zip(check_isotropic(inp, comps), check_separable(inp, comps))]


@dataclass(frozen=True)
class ChenCheck:
    degrees: Tuple[int, ...]
    lhs: Tuple[int, ...]
    rhs: Tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "rows": [{"q": q, "dim_W": a, "formula": b, "equal": a == b} for q, a, b in zip(self.degrees, self.lhs, self.rhs)],
            "all_equal": self.equal,
        }


def chen_formula_check(inp: KoszulInput, comps: Sequence[ComponentSpec], q_max: int) -> ChenCheck:
    """Compare dim W_q with Σ_t dim W_q(V̄_t, 0) for n-3 <= q <= q_max."""
    if inp.field.characteristic:
        raise PreconditionError("the component formula is checked in characteristic 0")
    flags = is_strongly_isotropic(inp, comps)
    bad = [i for i, ok in enumerate(flags) if not ok]
    if bad:
        raise PreconditionFailed(f"components {bad} are not strongly isotropic")
    degrees = tuple(range(max(inp.n - 3, 0), q_max + 1))
    lhs = tuple(koszul_dim(inp, q) for q in degrees)
    rhs = tuple(sum(free_module_dim(c.dim, q) for c in comps) for q in degrees)
    return ChenCheck(degrees, lhs, rhs)


# --------------------------------------------------------------------------
# random instances


def random_vector(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> List[int]:
    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            return v


def random_subspace(rng: random.Random, N: int, d: int, F: FieldSpec = FieldSpec(0), inside: Optional[SubspaceSpec] = None) -> SubspaceSpec:
    """A random d-dimensional subspace of k^N (or of ``inside``) with small integer coordinates."""
    if inside is not None:
        gens = inside.vectors()
        if d > len(gens):
            raise PreconditionError("requested dimension exceeds the ambient subspace")
    for _ in range(100):
        if inside is None:
            vecs = [random_vector(rng, N) for _ in range(d)]
        else:
            vecs = []
            for _ in range(d):
                coef = random_vector(rng, len(gens))
                acc = {}
                for c, g in zip(coef, gens):
                    for k, x in g.items():
                        acc[k] = F.add(acc.get(k, F.zero()), F.mul(F.coerce(c), x))
                vecs.append(acc)
        S = SubspaceSpec.span(vecs, N, F)
        if S.dim == d:
            return S
    raise InternalInconsistency("could not draw an independent random family")


def resonant_input(rng: random.Random, n: int, dim_k: int) -> KoszulInput:
    """K of the given dimension with a random decomposable a ∧ b inside K^⊥."""
    F = FieldSpec(0)
    a, b = random_vector(rng, n), random_vector(rng, n)
    while not any(wedge2(a, b)):
        b = random_vector(rng, n)
    hyper = SubspaceSpec.span([wedge2(a, b)], comb(n, 2), F).orthogonal()
    K = random_subspace(rng, comb(n, 2), dim_k, F, inside=hyper)
    return KoszulInput(F, n, K)


def generic_input(rng: random.Random, n: int, dim_k: int, F: FieldSpec = FieldSpec(0)) -> KoszulInput:
    return KoszulInput(F, n, random_subspace(rng, comb(n, 2), dim_k, F))


@dataclass(frozen=True)
class MultiplicityReport:
    n: int
    seed: int
    values: Tuple[int, ...]
    control: int

    @property
    def bound_holds(self) -> bool:
        return all(v >= self.n - 2 for v in self.values)

    def to_json(self) -> dict:
        return {"n": self.n, "seed": self.seed, "dim_W": list(self.values), "bound": self.n - 2,
                "bound_holds": self.bound_holds, "generic_control": self.control}


def divisor_multiplicity_check(n: int, trials: int, seed: int = 0) -> MultiplicityReport:
    """dim W_{n-3} >= n-2 on random resonant K of dimension 2n-3, plus one generic control."""
    if n < 4:
        raise PreconditionError("need n >= 4")
    rng = random.Random(seed)
    values = tuple(koszul_dim(resonant_input(rng, n, 2 * n - 3), n - 3) for _ in range(trials))
    control = koszul_dim(generic_input(rng, n, 2 * n - 3), n - 3)
    return MultiplicityReport(n, seed, values, control)
