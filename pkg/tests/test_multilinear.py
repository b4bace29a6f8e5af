from itertools import product
from math import comb

import pytest

from koszul.linalg import ExactMatrix, FieldSpec, SubspaceSpec, annihilator
from koszul.multilinear import (
    koszul_delta,
    sym_basis,
    sym_multiply,
    transform_wedge2,
    wedge2,
    wedge_basis,
    wedge_pairing,
)


def test_delta_small_cases():
    assert koszul_delta(1, 1, 0).to_dense() == [[1]]
    m = koszul_delta(2, 2, 0)
    assert m.shape == (4, 1)
    # rows: (v1 ⊗ x0), (v1 ⊗ x1), (v2 ⊗ x0), (v2 ⊗ x1) in wedge-major order
    assert [r[0] for r in m.to_dense()] == [0, -1, 1, 0]


def test_delta_squared_zero_exhaustive():
    for n in range(1, 6):
        for p in range(2, n + 1):
            for q in range(0, 4):
                d_hi = koszul_delta(n, p, q)
                d_lo = koszul_delta(n, p - 1, q + 1)
                assert (d_lo @ d_hi).nnz() == 0


def test_delta_columns_have_p_signed_entries():
    for n, p, q in product(range(1, 5), range(1, 5), range(3)):
        if p > n:
            continue
        for col in koszul_delta(n, p, q).columns():
            assert len(col) == p
            assert set(col.values()) <= {1, -1}


def test_delta_parameter_range():
    with pytest.raises(ValueError):
        koszul_delta(3, 4, 0)


def test_basis_bijections_and_orders():
    for n, k in product(range(0, 6), range(0, 5)):
        wb, sb = wedge_basis(n, k), sym_basis(n, k)
        assert len(wb) == comb(n, k)
        assert len(sb) == comb(n + k - 1, k) if n else len(sb) == (1 if k == 0 else 0)
        for i in range(len(wb)):
            assert wb.index_of(wb.element_at(i)) == i
        for i in range(len(sb)):
            assert sb.index_of(sb.element_at(i)) == i
    assert sym_basis(2, 2).elements == ((2, 0), (1, 1), (0, 2))
    assert wedge_basis(4, 2).elements == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_wedge_pairing():
    assert wedge_pairing(2).to_dense() == [[1]]
    assert wedge_pairing(4) == ExactMatrix.identity(6)
    K = SubspaceSpec.span([[1, 2, 0, 0, 1, 0, 0, 0, 0, 3], [0, 1, 1, 0, 0, 0, 2, 0, 0, 0]], 10)
    assert annihilator(K, wedge_pairing(5)).dim == 10 - K.dim


def test_sym_multiply():
    assert sym_multiply(3, 2, 0) == ExactMatrix.identity(len(sym_basis(3, 2)))
    assert sym_multiply(1, 3, 4).to_dense() == [[1]]
    m = sym_multiply(2, 1, 1)
    # sources x⊗x, x⊗y, y⊗x, y⊗y ; targets x^2, xy, y^2
    assert m.to_dense() == [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]]


def test_transform_wedge2_matches_plucker():
    g = [[1, 2, 0], [0, 1, 3], [1, 0, 1]]  # columns are images of basis vectors
    a, b = [1, 0, 0], [0, 1, 0]
    ga = [sum(g[r][i] * a[i] for i in range(3)) for r in range(3)]
    gb = [sum(g[r][i] * b[i] for i in range(3)) for r in range(3)]
    expected = {i: v for i, v in enumerate(wedge2(ga, gb)) if v}
    assert transform_wedge2({0: 1}, g, 3) == expected
