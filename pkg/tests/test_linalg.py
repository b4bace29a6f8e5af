import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from koszul.errors import DenominatorDivisibleByP, DimensionMismatch, PreconditionError
from koszul.linalg import (
    ExactMatrix,
    FieldSpec,
    GaloisField,
    SubspaceSpec,
    annihilator,
    intersection,
    kernel_basis,
    rank,
    subspace_sum,
)
from koszul.multilinear import wedge_pairing

QQ, F2, F5 = FieldSpec(0), FieldSpec(2), FieldSpec(5)


def test_rank_examples():
    assert rank(ExactMatrix.identity(4), QQ) == 4
    assert rank(ExactMatrix(3, 5), QQ) == 0
    m = ExactMatrix.from_dense([[2, 4], [1, 2]])
    assert rank(m, QQ) == 1
    assert rank(m, F2) == 1


def test_rank_rejects_bad_denominator():
    m = ExactMatrix.from_dense([[Fraction(1, 2), 1]])
    assert rank(m, FieldSpec(3)) == 1
    with pytest.raises(DenominatorDivisibleByP):
        rank(m, F2)


def test_field_validation_and_format():
    with pytest.raises(ValueError):
        FieldSpec(4)
    assert QQ.format(Fraction(6, 4)) == "3/2"
    assert QQ.format(Fraction(4, 2)) == "2"
    assert F5.format(-1) == 4
    assert QQ.coerce("-3/9") == Fraction(-1, 3)
    assert F5.coerce("1/2") == 3


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.identity(3), QQ).dim == 0
    assert kernel_basis(ExactMatrix(2, 3), QQ) == SubspaceSpec.full(3)
    k = kernel_basis(ExactMatrix.from_dense([[1, 1, 0]]), QQ)
    assert k.dim == 2
    assert k.contains_vector([1, -1, 0])


def test_subspace_canonical_form():
    a = SubspaceSpec.span([[1, 2, 3], [0, 1, 1]], 3)
    b = SubspaceSpec.span([[1, 3, 4], [2, 4, 6]], 3)
    assert a == b
    assert a.pivots() == [0, 1]


def test_subspace_ops():
    s = SubspaceSpec.span([[1, 0, 0, 1]], 4)
    assert s + s == s
    t = SubspaceSpec.span([[0, 1, 0, 0], [1, 0, 0, 1]], 4)
    assert intersection(s, t) == s
    assert t.contains(s) and not s.contains(t)
    assert subspace_sum(s, t) == t
    with pytest.raises(DimensionMismatch):
        s + SubspaceSpec.zero(3)


def test_annihilator_examples():
    P = wedge_pairing(4)
    assert annihilator(SubspaceSpec.full(6), P).dim == 0
    ann = annihilator(SubspaceSpec.span([[1, 0, 0, 0, 0, 0]], 6), P)
    assert ann.dim == 5
    assert not ann.contains_vector([1, 0, 0, 0, 0, 0])
    with pytest.raises(PreconditionError):
        annihilator(SubspaceSpec.full(2), ExactMatrix(2, 2))


def test_subspace_json_roundtrip():
    s = SubspaceSpec.span([[Fraction(1, 2), 3, 0], [0, 1, Fraction(-2, 7)]], 3)
    assert SubspaceSpec.from_json(s.to_json()) == s


def test_galois_field_axioms():
    for p, k in ((2, 3), (3, 2), (5, 1)):
        gf = GaloisField(p, k)
        for a in gf.elements():
            assert gf.add(a, gf.neg(a)) == 0
            if a:
                assert gf.mul(a, gf.inv(a)) == 1
        a, b, c = 3 % gf.q, 5 % gf.q, (gf.q - 1)
        assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=120, derandomize=True, deadline=None)
@given(matrices, st.sampled_from([0, 2, 3, 7]))
def test_rank_nullity(rows, p):
    F = FieldSpec(p)
    m = ExactMatrix.from_dense(rows)
    assert rank(m, F) + kernel_basis(m, F).dim == m.ncols


@settings(max_examples=120, derandomize=True, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_rank_permutation_and_scaling_invariant(rows, rnd):
    m = ExactMatrix.from_dense(rows)
    r = rank(m, QQ)
    perm_rows = rows[:]
    rnd.shuffle(perm_rows)
    cols = list(range(len(rows[0])))
    rnd.shuffle(cols)
    shuffled = [[row[c] * (i + 2) for c in cols] for i, row in enumerate(perm_rows)]
    assert rank(ExactMatrix.from_dense(shuffled), QQ) == r


@settings(max_examples=120, derandomize=True, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7, 11]))
def test_rank_semicontinuity(rows, p):
    m = ExactMatrix.from_dense(rows)
    assert rank(m, QQ) >= rank(m, FieldSpec(p))


def test_sparse_rank_matches_dense_elimination_on_rationals():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(7)] for _ in range(5)]
        rows.append([a + b for a, b in zip(rows[0], rows[1])])
        assert rank(ExactMatrix.from_dense(rows), QQ) <= 5
