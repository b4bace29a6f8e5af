"""Linear subspaces of k^N held in canonical reduced echelon form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Mapping, Sequence, Tuple, Union

from ..errors import DimensionMismatch, PreconditionError
from .field import FieldSpec, Scalar
from .matrix import Echelon, ExactMatrix, null_space, rref, sparse_rank

VectorLike = Union[Sequence[Scalar], Mapping[int, Scalar]]


def _as_dict(v: VectorLike) -> dict:
    if isinstance(v, Mapping):
        return dict(v)
    return {i: x for i, x in enumerate(v) if x}


@dataclass(frozen=True)
class SubspaceSpec:
    """A subspace of field^ambient_dim.

    ``basis`` is the reduced row-echelon basis with strictly increasing pivot
    columns, so two specs describe the same subspace iff they compare equal.
    """

    ambient_dim: int
    basis: Tuple[Tuple[Scalar, ...], ...]
    field: FieldSpec = FieldSpec(0)

    @classmethod
    def span(cls, vectors: Iterable[VectorLike], ambient_dim: int, field: FieldSpec = FieldSpec(0)) -> "SubspaceSpec":
        dicts = []
        for v in vectors:
            d = _as_dict(v)
            if not isinstance(v, Mapping) and len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            if any(not 0 <= c < ambient_dim for c in d):
                raise DimensionMismatch("coordinate outside ambient dimension")
            dicts.append(d)
        return cls._from_echelon(rref(dicts, field), ambient_dim, field)

    @classmethod
    def _from_echelon(cls, ech: Echelon, ambient_dim: int, field: FieldSpec) -> "SubspaceSpec":
        zero = field.zero()
        rows = []
        for row in ech.basis():
            dense = [zero] * ambient_dim
            for c, x in row.items():
                dense[c] = x
            rows.append(tuple(dense))
        return cls(ambient_dim, tuple(rows), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: FieldSpec = FieldSpec(0)) -> "SubspaceSpec":
        return cls(ambient_dim, (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: FieldSpec = FieldSpec(0)) -> "SubspaceSpec":
        return cls.span([{i: 1} for i in range(ambient_dim)], ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[dict]:
        return [_as_dict(b) for b in self.basis]

    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(b) if x) for b in self.basis]

    def _echelon(self) -> Echelon:
        ech = Echelon(self.field)
        for v in self.vectors():
            ech.add(v)
        return ech

    def _check(self, other: "SubspaceSpec"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")
        if self.field != other.field:
            raise DimensionMismatch(f"fields {self.field} and {other.field} differ")

    def contains_vector(self, v: VectorLike) -> bool:
        d = {c: self.field.coerce(x) for c, x in _as_dict(v).items()}
        return self._echelon().contains(d)

    def contains(self, other: "SubspaceSpec") -> bool:
        self._check(other)
        ech = self._echelon()
        return all(ech.contains(v) for v in other.vectors())

    def __add__(self, other: "SubspaceSpec") -> "SubspaceSpec":
        return subspace_sum(self, other)

    def __and__(self, other: "SubspaceSpec") -> "SubspaceSpec":
        return intersection(self, other)

    def orthogonal(self) -> "SubspaceSpec":
        """Annihilator under the coordinate dot product."""
        return SubspaceSpec.span(null_space(self.vectors(), self.ambient_dim, self.field), self.ambient_dim, self.field)

    def to_json(self) -> dict:
        f = self.field
        return {
            "ambient_dim": self.ambient_dim,
            "field": f.to_json(),
            "basis": [[f.format(x) for x in b] for b in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubspaceSpec":
        field = FieldSpec.from_json(data.get("field", {"char": 0}))
        return cls.span(data["basis"], int(data["ambient_dim"]), field)


def subspace_sum(a: SubspaceSpec, b: SubspaceSpec) -> SubspaceSpec:
    a._check(b)
    return SubspaceSpec.span(a.vectors() + b.vectors(), a.ambient_dim, a.field)


def intersection(a: SubspaceSpec, b: SubspaceSpec) -> SubspaceSpec:
    a._check(b)
    return subspace_sum(a.orthogonal(), b.orthogonal()).orthogonal()


def contains(a: SubspaceSpec, b: SubspaceSpec) -> bool:
    """True when ``b`` is a subspace of ``a``."""
    return a.contains(b)


def annihilator(s: SubspaceSpec, pairing: ExactMatrix) -> SubspaceSpec:
    """{y : <x, y> = 0 for all x in s}, where <x, y> = x^T P y.

    The pairing must be square of size ambient_dim and nondegenerate.
    """
    n = s.ambient_dim
    if pairing.shape != (n, n):
        raise DimensionMismatch(f"pairing of shape {pairing.shape} for ambient dimension {n}")
    F = s.field
    if sparse_rank(pairing.columns(), F) != n:
        raise PreconditionError("pairing is degenerate")
    prow = pairing.rows()
    rows = []
    for x in s.vectors():
        acc = {}
        for i, xi in x.items():
            for j, pij in prow[i].items():
                acc[j] = F.add(acc.get(j, F.zero()), F.mul(xi, F.coerce(pij)))
        rows.append(acc)
    return SubspaceSpec.span(null_space(rows, n, F), n, F)
