import random
from math import comb

import pytest

from koszul.core import (
    GradedDimTable,
    KoszulInput,
    check_monotone_vanishing,
    free_module_dim,
    hilbert_table,
    koszul_dim,
    koszul_dim_presentation,
    vanishing_threshold,
)
from koszul.errors import BudgetExceeded, InternalInconsistency, PreconditionError
from koszul.linalg import FieldSpec, SubspaceSpec
from koszul.resonance import generic_input, random_subspace


def full(n, F=FieldSpec(0)):
    return KoszulInput(F, n, SubspaceSpec.full(comb(n, 2), F))


def zero(n, F=FieldSpec(0)):
    return KoszulInput(F, n, SubspaceSpec.zero(comb(n, 2), F))


TWO_COMPONENTS = KoszulInput.from_kperp(4, [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]])


def test_full_K_kills_everything():
    for n in range(2, 6):
        for q in range(4):
            assert koszul_dim(full(n), q) == 0
            assert koszul_dim_presentation(full(n), q) == 0


def test_free_module_values():
    assert koszul_dim(zero(3), 1) == 8 == 2 * comb(4, 3)
    assert free_module_dim(3, 0) == 3
    assert [free_module_dim(2, q) for q in range(5)] == [1, 2, 3, 4, 5]
    assert koszul_dim_presentation(zero(3), 0) == 3


def test_degree_zero_is_quotient():
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(2, 5)
        inp = generic_input(rng, n, rng.randint(0, comb(n, 2)))
        assert koszul_dim(inp, 0) == comb(n, 2) - inp.K.dim


def test_two_component_example():
    assert koszul_dim(TWO_COMPONENTS, 2) == 6
    assert koszul_dim_presentation(TWO_COMPONENTS, 2) == 6


def test_hilbert_table():
    assert hilbert_table(zero(3), 2).entries == (3, 8, 15)
    assert set(hilbert_table(full(4), 3).entries) == {0}
    assert hilbert_table(TWO_COMPONENTS, 4, route="presentation").entries == (2, 4, 6, 8, 10)


def test_hilbert_table_parallel_matches_serial():
    t1 = hilbert_table(TWO_COMPONENTS, 3)
    t2 = hilbert_table(TWO_COMPONENTS, 3, threads=2)
    assert t1 == t2


def test_monotone_vanishing_guard():
    check_monotone_vanishing([3, 1, 0, 0])
    with pytest.raises(InternalInconsistency):
        check_monotone_vanishing([3, 0, 1])


def test_vanishing_threshold():
    assert vanishing_threshold(full(4), 3) == 0
    assert vanishing_threshold(zero(4), 5) is None
    rng = random.Random(11)
    inp = generic_input(rng, 4, 5)
    t = vanishing_threshold(inp, 4)
    assert t is not None and t <= 1


def test_degenerate_dimensions():
    assert koszul_dim(zero(0), 0) == 0
    assert koszul_dim(zero(1), 2) == 0
    assert koszul_dim(zero(2), 3) == free_module_dim(2, 3)
    assert koszul_dim_presentation(zero(2), 3) == free_module_dim(2, 3)


def test_input_validation():
    with pytest.raises(PreconditionError):
        KoszulInput(FieldSpec(0), 4, SubspaceSpec.zero(5))
    with pytest.raises(PreconditionError):
        koszul_dim(zero(3), -1)


def test_budget(monkeypatch):
    monkeypatch.setenv("KOSZUL_BUDGET", "20")
    with pytest.raises(BudgetExceeded):
        koszul_dim(zero(4), 2)


def test_graded_table_json():
    t = GradedDimTable((4, 2), start=2)
    assert t[3] == 2 and list(t.degrees()) == [2, 3]
    assert t.to_json() == {"start": 2, "entries": {"2": 4, "3": 2}}


def test_char_p_routes_agree():
    rng = random.Random(2)
    for p in (2, 3, 5):
        F = FieldSpec(p)
        for _ in range(5):
            n = rng.randint(3, 5)
            inp = KoszulInput(F, n, random_subspace(rng, comb(n, 2), rng.randint(0, comb(n, 2) - 1), F))
            for q in range(3):
                assert koszul_dim(inp, q) == koszul_dim_presentation(inp, q)
