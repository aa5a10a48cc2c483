import json

import pytest

from psl3 import oracle
from psl3.characters import georgiev_char
from psl3.oracle import (
    BudgetExceeded,
    GradedDims,
    RowEchelon,
    apply_mode,
    cache_path,
    cached_principal_dims,
    exactness_check,
    highest_weight_vector,
    principal_dims,
)
from psl3.rootdata import AffineHW

VAC = ((), (0, 0))
L1 = ((), (1, 0))
L2 = ((), (0, 1))


def test_highest_weight_vectors():
    assert highest_weight_vector(AffineHW(1, 0, 0)) == {(VAC,): 1}
    assert highest_weight_vector(AffineHW(0, 1, 0)) == {(L1,): 1}
    assert highest_weight_vector(AffineHW(1, 1, 0)) == {(VAC, L1): 1}
    assert highest_weight_vector(AffineHW(1, 1, 2)) == {(VAC, L1, L2, L2): 1}


def test_lowest_mode_on_vacuum_gives_lattice_element():
    out = apply_mode(1, -1, {(VAC,): 1})
    assert list(out) == [(((), (2, -1)),)]
    assert abs(out[(((), (2, -1)),)]) == 1


def test_mode_zero_kills_vacuum():
    assert apply_mode(1, 0, {(VAC,): 1}) == {}
    assert apply_mode(2, 0, {(VAC,): 1}) == {}


def test_annihilation_on_lambda1():
    assert apply_mode(1, -1, {(L1,): 1}) == {}
    # the first nonzero mode on e^{lambda1} is x_{alpha1}(-2)
    assert apply_mode(1, -2, {(L1,): 1}) != {}


def test_next_mode_on_vacuum_carries_one_heisenberg_quantum():
    out = apply_mode(1, -2, {(VAC,): 1})
    # x_{a1}(-2) 1 = alpha1(-1) e^{a1}
    assert len(out) >= 1
    for basis in out:
        (heis, point), = basis
        assert point == (2, -1) and sum(n for n, _ in heis) == 1


def test_mode_is_linear():
    v = {(VAC,): 3}
    w = apply_mode(1, -3, {(VAC,): 1})
    assert apply_mode(1, -3, v) == {b: 3 * c for b, c in w.items()}


def test_row_echelon_detects_dependence():
    ech = RowEchelon()
    assert ech.insert({"a": 1, "b": 2}) is not None
    assert ech.insert({"a": 2, "b": 4}) is None
    assert ech.insert({"b": 1}) is not None
    assert ech.insert({"a": 5, "b": -7}) is None
    assert len(ech) == 2


# -- graded dimensions ------------------------------------------------------

@pytest.fixture(scope="module")
def vacuum_dims():
    return principal_dims(AffineHW(1, 0, 0), 3, 6)


def test_level_one_spot_values(vacuum_dims):
    d = vacuum_dims
    assert d.dim(0, 0, 0) == 1
    assert [d.dim(1, 1, s) for s in (1, 2, 3)] == [1, 2, 3]
    assert d.dim(1, 0, 1) == 1
    assert [d.dim(2, 0, s) for s in range(4)] == [0, 0, 0, 0]
    assert d.dim(2, 0, 4) == 1


def test_level_one_matches_formula(vacuum_dims):
    chi = georgiev_char(1, 1, 1, 3, 6)
    assert all(vacuum_dims.dim(*key) == chi.coefficient(*key) for key in vacuum_dims.keys())


def test_dim_window_behaviour(vacuum_dims):
    assert vacuum_dims.dim(-1, 0, 2) == 0
    with pytest.raises(KeyError):
        vacuum_dims.dim(4, 0, 0)
    with pytest.raises(KeyError):
        vacuum_dims.dim(0, 0, 7)


@pytest.mark.parametrize("hw", [(1, 0, 0), (1, 1, 0), (2, 1, 0), (1, 1, 1)])
def test_dynkin_symmetry(hw):
    a = principal_dims(AffineHW(*hw), 3, 4)
    b = principal_dims(AffineHW(*hw).dynkin_flip(), 3, 4)
    for r1, r2, s in a.keys():
        assert a.dim(r1, r2, s) == b.dim(r2, r1, s)


@pytest.mark.parametrize("hw", [(1, 0, 0), (0, 1, 1), (1, 1, 1)])
def test_cocycle_and_order_independence(hw):
    hw = AffineHW(*hw)
    base = principal_dims(hw, 2, 4).entries
    assert principal_dims(hw, 2, 4, cocycle="alternate").entries == base
    assert principal_dims(hw, 2, 4, reverse=True).entries == base
    assert principal_dims(hw, 2, 4, cocycle="alternate", reverse=True).entries == base


def test_family_g_is_computed():
    dims = principal_dims(AffineHW(1, 1, 1), 2, 3)
    assert dims.dim(0, 0, 0) == 1
    assert all(d > 0 for d in dims.entries.values())


def test_unknown_cocycle():
    with pytest.raises(ValueError):
        principal_dims(AffineHW(1, 0, 0), 1, 1, cocycle="nope")


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        principal_dims(AffineHW(2, 0, 0), 10, 30)
    with pytest.raises(BudgetExceeded):
        principal_dims(AffineHW(1, 0, 0), 2, 3, budget=5)


# -- serialization and cache ------------------------------------------------

def test_json_round_trip(vacuum_dims):
    doc = json.loads(vacuum_dims.to_json())
    assert doc["weight"] == [1, 0, 0] and doc["C"] == 3 and doc["S"] == 6
    assert {"r1": 1, "r2": 1, "s": 2, "dim": 2} in doc["entries"]
    assert GradedDims.from_dict(doc).entries == vacuum_dims.entries


def test_cache_is_reused(tmp_path, monkeypatch):
    hw = AffineHW(1, 0, 0)
    first = cached_principal_dims(hw, 2, 3, tmp_path)
    path = cache_path(tmp_path, hw, 2, 3)
    assert path.exists() and "v1" in path.name
    text = path.read_text()

    def boom(*args, **kwargs):
        raise AssertionError("should have been served from the cache")

    monkeypatch.setattr(oracle, "principal_dims", boom)
    again = cached_principal_dims(hw, 2, 3, tmp_path)
    assert again.entries == first.entries
    assert path.read_text() == text


def test_cache_key_separates_cocycles(tmp_path):
    hw = AffineHW(1, 0, 0)
    assert cache_path(tmp_path, hw, 2, 3) != cache_path(tmp_path, hw, 2, 3, "alternate")


def test_corrupt_cache_is_recomputed(tmp_path):
    hw = AffineHW(1, 0, 0)
    cache_path(tmp_path, hw, 2, 3).write_text("{not json")
    assert cached_principal_dims(hw, 2, 3, tmp_path).dim(1, 1, 1) == 1


# -- exact sequences --------------------------------------------------------

def test_exactness_small_examples():
    rep = exactness_check(1, 1, 2, 3)
    assert rep.passed and rep.checked > 0
    left = principal_dims(AffineHW(1, 0, 0), 2, 3)
    right = principal_dims(AffineHW(0, 1, 0), 2, 3)
    kernel = principal_dims(AffineHW(0, 1, 0), 2, 4)
    # (1,0,1): 1 = 0 + 1 and (0,0,0): 1 = 1 + 0
    assert left.dim(1, 0, 1) == right.dim(1, 0, 1) + kernel.dim(0, 0, 0) == 1
    assert right.dim(1, 0, 1) == 0
    assert left.dim(0, 0, 0) == right.dim(0, 0, 0) + kernel.dim(-1, 0, 0) == 1


@pytest.mark.parametrize("k,i", [(1, 1), (2, 1), (2, 2)])
def test_exactness_passes(k, i):
    rep = exactness_check(k, i, 3, 4)
    assert rep.passed, rep.failures[:3]


def test_exactness_range():
    with pytest.raises(ValueError):
        exactness_check(2, 0, 2, 2)
