from math import comb

import pytest

from koszul.errors import PreconditionError, RankDeficient
from koszul.green import (
    CGParams,
    betti_generic_canonical,
    cg_input,
    cg_span,
    cg_subspace,
    cg_subspace_wronskian,
    charp_green,
    green_betti_consistency,
    green_dims,
    hermite_dim_check,
    jacobian_matrix,
    orbit_vectors,
    raise_operator_wedge,
    scroll_betti,
    wronskian_kperp,
)
from koszul.linalg import FieldSpec, SubspaceSpec, rank
from koszul.resonance import is_resonance_trivial


def test_cg_dimension_char0():
    for i in range(1, 7):
        K = cg_subspace(CGParams(i))
        assert K.dim == 2 * i + 3
        assert K.ambient_dim == comb(i + 3, 2)


def test_orbit_integrality_and_highest_weight():
    for i in range(1, 5):
        m = i + 2
        vecs = orbit_vectors(m)
        assert all(isinstance(v, int) for vec in vecs for v in vec.values())
        assert raise_operator_wedge(vecs[0], m) == {}


def test_wronskian_examples():
    assert rank(jacobian_matrix(2), FieldSpec(0)) == 3
    assert wronskian_kperp(2).dim == 0
    assert cg_subspace_wronskian(CGParams(0 + 1)).dim == 5
    assert wronskian_kperp(3).dim == 1
    with pytest.raises(PreconditionError):
        wronskian_kperp(1)


def test_route_equality():
    for i in (1, 2, 3):
        assert cg_subspace(CGParams(i)) == cg_subspace_wronskian(CGParams(i))


def test_resonance_trivial_char0():
    assert is_resonance_trivial(cg_input(CGParams(2))).trivial == "yes"


def test_green_dims_i2():
    t = green_dims(CGParams(2), 3)
    assert t.entries == (3, 5, 0, 0)
    assert green_dims(CGParams(2), 3, route="both") == t


def test_even_genus_corollary():
    for i in (1, 2, 3):
        t = green_dims(CGParams(i), i + 1)
        if t[i] == 0:
            assert t[i + 1] == 0


def test_betti_consistency():
    for i in (1, 2, 3):
        for g, (w, b) in green_betti_consistency(i).items():
            assert w == b, (i, g)


def test_betti_tables():
    assert betti_generic_canonical(7).b(1, 1) == 10
    assert betti_generic_canonical(5).b(1, 1) == 3
    t3 = betti_generic_canonical(3)
    assert t3.row1 == (0,) and t3.row2 == (0,)
    for g in range(3, 15):
        t = betti_generic_canonical(g)
        for p in range(1, g - 1):
            assert t.b(p, 2) == t.b(g - p - 2, 1)
    text = betti_generic_canonical(7).render().splitlines()
    assert text[2].split()[2:4] == ["10", "16"]


def test_scroll_betti():
    assert scroll_betti(7, 4, 1) == 6
    for g, k in ((7, 3), (10, 4), (9, 5)):
        assert scroll_betti(g, k, g - k) == g - k
        assert scroll_betti(g, k, g - k + 1) == 0


def test_hermite():
    assert hermite_dim_check(0, 5) and hermite_dim_check(5, 0) and hermite_dim_check(3, 2)
    assert all(hermite_dim_check(d, i) for d in range(13) for i in range(13))


def test_large_characteristic_matches_char0():
    assert green_dims(CGParams(2, FieldSpec(5)), 2).entries == (3, 5, 0)
    assert charp_green(CGParams(2, FieldSpec(7)), 2) == 0


def test_small_characteristic_flagged():
    assert CGParams(2, FieldSpec(2)).experimental
    assert not CGParams(2, FieldSpec(5)).experimental
    assert not CGParams(2).experimental


def test_rank_deficiency_is_reported():
    with pytest.raises(RankDeficient) as e:
        cg_subspace(CGParams(1, FieldSpec(2)))
    assert (e.value.expected, e.value.achieved, e.value.characteristic) == (5, 3, 2)
    with pytest.raises(RankDeficient):
        charp_green(CGParams(2, FieldSpec(3)), 1)
    assert cg_span(CGParams(3, FieldSpec(3))).dim == 9
