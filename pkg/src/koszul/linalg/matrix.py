"""Sparse exact matrices, rank and null space over Q or F_p."""

from __future__ import annotations

import heapq
import os
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import BudgetExceeded, DimensionMismatch
from .field import FieldSpec, Scalar

DEFAULT_BUDGET = 50000


def budget() -> int:
    """Column cap for any matrix handed to the eliminator (env KOSZUL_BUDGET)."""
    raw = os.environ.get("KOSZUL_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class ExactMatrix:
    """An nrows x ncols matrix stored column-wise as sparse dicts.

    Entries are whatever exact scalars the caller supplies (ints, Fractions,
    ints mod p); they are coerced into a field only when a FieldSpec is given
    to an operation. Zero entries are never stored.
    """

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        self.nrows = nrows
        self.ncols = ncols
        cols: List[Dict[int, Scalar]] = [{} for _ in range(ncols)]
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if v:
                cols[c][r] = v
        self._cols = cols

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "ExactMatrix":
        m = cls(nrows, 0)
        m.ncols = len(columns)
        m._cols = [{r: v for r, v in col.items() if v} for col in columns]
        for col in m._cols:
            for r in col:
                if not 0 <= r < nrows:
                    raise IndexError(f"row index {r} outside 0..{nrows - 1}")
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> "ExactMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise DimensionMismatch("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> Dict[Tuple[int, int], Scalar]:
        return {(r, c): v for c, col in enumerate(self._cols) for r, v in col.items()}

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def columns(self) -> List[Dict[int, Scalar]]:
        return [dict(c) for c in self._cols]

    def rows(self) -> List[Dict[int, Scalar]]:
        out: List[Dict[int, Scalar]] = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def to_dense(self) -> List[List[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self._cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_columns(self.ncols, self.rows())

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = []
        for col in other._cols:
            acc: Dict[int, Scalar] = {}
            for k, v in col.items():
                for r, w in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + w * v
            cols.append(acc)
        return ExactMatrix.from_columns(self.nrows, cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# --------------------------------------------------------------------------
# sparse elimination


def _integer_rows(vectors: Iterable[Mapping[int, Scalar]], field: FieldSpec) -> List[Dict[int, int]]:
    """Coerce vectors into the field; over Q clear denominators row by row."""
    p = field.characteristic
    out = []
    for vec in vectors:
        if p:
            row = {}
            for c, v in vec.items():
                v = field.coerce(v)
                if v:
                    row[c] = v
        else:
            fr = {c: Fraction(v) for c, v in vec.items() if v}
            if not fr:
                continue
            den = 1
            for v in fr.values():
                den = lcm(den, v.denominator)
            row = {c: int(v * den) for c, v in fr.items()}
            g = 0
            for v in row.values():
                g = gcd(g, v)
            if g > 1:
                row = {c: v // g for c, v in row.items()}
        if row:
            out.append(row)
    return out


def sparse_rank(vectors: Iterable[Mapping[int, Scalar]], field: FieldSpec) -> int:
    """Rank of the span of sparse vectors.

    Over Q the vectors are scaled to primitive integer vectors and eliminated
    fraction-free (each update is a*r - b*pivot followed by removal of the
    content), so no rational arithmetic happens in the inner loop. Pivots are
    chosen Markowitz-style: the column with the fewest live entries, then the
    shortest row in that column.
    """
    p = field.characteristic
    rows: List[Optional[Dict[int, int]]] = _integer_rows(vectors, field)
    col_rows: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        live = col_rows.get(c)
        if not live:
            continue
        if len(live) != cnt:
            heapq.heappush(heap, (len(live), c))
            continue
        pr = min(live, key=lambda i: len(rows[i]))
        prow = rows[pr]
        rows[pr] = None
        rank += 1
        for cc in prow:
            col_rows[cc].discard(pr)
        others = col_rows.pop(c)
        if not others:
            for cc in prow:
                s = col_rows.get(cc)
                if s:
                    heapq.heappush(heap, (len(s), cc))
            continue
        pv = prow[c]
        touched = set(prow)
        if p:
            pinv = pow(pv, -1, p)
            for i in others:
                r = rows[i]
                f = r.pop(c) * pinv % p
                for cc, v in prow.items():
                    if cc == c:
                        continue
                    nv = (r.get(cc, 0) - f * v) % p
                    if nv:
                        if cc not in r:
                            col_rows[cc].add(i)
                        r[cc] = nv
                    elif cc in r:
                        del r[cc]
                        col_rows[cc].discard(i)
        else:
            for i in others:
                r = rows[i]
                f = r.pop(c)
                g = gcd(pv, f)
                a, b = pv // g, f // g
                if a != 1:
                    if a == -1:
                        for cc in r:
                            r[cc] = -r[cc]
                    else:
                        for cc in r:
                            r[cc] *= a
                for cc, v in prow.items():
                    if cc == c:
                        continue
                    nv = r.get(cc, 0) - b * v
                    if nv:
                        if cc not in r:
                            col_rows[cc].add(i)
                        r[cc] = nv
                    elif cc in r:
                        del r[cc]
                        col_rows[cc].discard(i)
                if r and a != 1 and a != -1:
                    g = 0
                    for v in r.values():
                        g = gcd(g, v)
                        if g == 1:
                            break
                    if g > 1:
                        for cc in r:
                            r[cc] //= g
        for cc in touched:
            s = col_rows.get(cc)
            if s:
                heapq.heappush(heap, (len(s), cc))
    return rank


def _check_budget(m: ExactMatrix, what: str):
    b = budget()
    if m.ncols > b:
        raise BudgetExceeded(what, m.ncols, b)


def rank(m: ExactMatrix, field: FieldSpec) -> int:
    """Exact rank of ``m`` over ``field``."""
    _check_budget(m, "rank")
    return sparse_rank(m._cols, field)


# --------------------------------------------------------------------------
# reduced echelon forms (canonical subspace bases)


class Echelon:
    """Reduced row-echelon basis maintained under insertion.

    Rows are dicts keyed by coordinate, normalised so the pivot (lowest
    coordinate) is 1 and every pivot column is zero in every other row.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.rows: Dict[int, Dict[int, Scalar]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        F = self.field
        p = F.characteristic
        v = {c: x for c, x in vec.items() if x}
        for c in [c for c in v if c in self.rows]:
            coef = v.get(c)
            if not coef:
                continue
            for cc, w in self.rows[c].items():
                nv = v.get(cc, 0) - coef * w
                if p:
                    nv %= p
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def contains(self, vec: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, Scalar]) -> bool:
        """Insert ``vec``; return False when it was already in the span."""
        F = self.field
        p = F.characteristic
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        inv = F.inv(r[lead])
        r = {c: (x * inv % p if p else x * inv) for c, x in r.items()}
        for row in self.rows.values():
            coef = row.get(lead)
            if coef:
                for cc, w in r.items():
                    nv = row.get(cc, 0) - coef * w
                    if p:
                        nv %= p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        self.rows[lead] = r
        return True

    def basis(self) -> List[Dict[int, Scalar]]:
        return [self.rows[c] for c in sorted(self.rows)]

    def pivots(self) -> List[int]:
        return sorted(self.rows)


def rref(vectors: Iterable[Mapping[int, Scalar]], field: FieldSpec) -> Echelon:
    ech = Echelon(field)
    for v in vectors:
        ech.add({c: field.coerce(x) for c, x in v.items() if x})
    return ech


def null_space(rows: Sequence[Mapping[int, Scalar]], ncols: int, field: FieldSpec) -> List[Dict[int, Scalar]]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    ech = rref(rows, field)
    pivots = set(ech.rows)
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: field.one()}
        for pc, row in ech.rows.items():
            x = row.get(f)
            if x:
                vec[pc] = field.neg(x)
        out.append(vec)
    return out


def kernel_basis(m: ExactMatrix, field: FieldSpec):
    """Canonical basis of the right null space of ``m``."""
    from .subspace import SubspaceSpec

    _check_budget(m, "kernel_basis")
    vecs = null_space(m.rows(), m.ncols, field)
    return SubspaceSpec.span(vecs, m.ncols, field)
