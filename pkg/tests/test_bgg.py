import random
from math import comb

import pytest

from koszul.bgg import _wedge_sign, exterior_tor
from koszul.core import KoszulInput, free_module_dim, koszul_dim
from koszul.errors import BudgetExceeded, PreconditionError
from koszul.linalg import FieldSpec, SubspaceSpec
from koszul.resonance import generic_input, random_subspace


def test_exterior_algebra_is_free():
    inp = KoszulInput.from_kperp(3, [])
    t = exterior_tor(inp, 3)
    assert t.dims[0] == ((0, 1),)
    assert all(row == () for row in t.dims[1:])


def test_K_zero_matches_free_formula():
    inp = KoszulInput(FieldSpec(0), 3, SubspaceSpec.zero(3))
    t = exterior_tor(inp, 3)
    for q in range(3):
        assert t.get(q + 1, q + 2) == free_module_dim(3, q)


def test_random_n4():
    rng = random.Random(4)
    for _ in range(3):
        inp = generic_input(rng, 4, 3)
        t = exterior_tor(inp, 4).koszul_dims()
        assert t == {q: koszul_dim(inp, q) for q in range(4)}


def test_char_p():
    rng = random.Random(8)
    F = FieldSpec(3)
    inp = KoszulInput(F, 4, random_subspace(rng, 6, 2, F))
    assert exterior_tor(inp, 3).koszul_dims() == {q: koszul_dim(inp, q) for q in range(3)}


def test_wedge_sign():
    # e1 ∧ e0 = -e0 ∧ e1
    assert _wedge_sign(0b10, 0b01) == -1
    assert _wedge_sign(0b01, 0b10) == 1
    # (e0 e2) ∧ e1 = - e0 e1 e2
    assert _wedge_sign(0b101, 0b010) == -1


def test_guards():
    inp = KoszulInput(FieldSpec(0), 5, SubspaceSpec.zero(10))
    with pytest.raises(PreconditionError):
        exterior_tor(inp, 0)
    with pytest.raises(BudgetExceeded):
        exterior_tor(inp, 4, limit=30)
