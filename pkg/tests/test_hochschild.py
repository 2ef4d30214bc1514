from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclix.ainfty import AInftyData, raw_ops
from cyclix.exactlin import Field
from cyclix.hochschild import (
    ExplosionGuard,
    b_apply,
    b_apply_combo,
    enumerate_words,
    hochschild_complex,
    hochschild_homology,
    identification_sign,
    word_degree,
)
from cyclix.modelzoo import directed_category, exceptional_algebra, fixture, random_directed
from oracles import ungraded_tables

FIXTURES = ["k", "s2", "cp2", "lambda1", "lambda2", "s3", "directed3", "exceptional3"]


def reliable_by_length(table):
    return {h: n for h, n in table.dims.items() if table.reliable[h]}


def test_empty_hom_basis():
    data = AInftyData.build(["A"], {})
    assert len(enumerate_words(data, 5)) == 0


def test_one_word_per_length_for_k():
    space = enumerate_words(fixture("k"), 6)
    assert sorted(len(w) for w in space) == [1, 2, 3, 4, 5, 6]


def test_directed_pair_only_identity_words():
    data = directed_category(2, {(1, 2): [("f", 0)]})
    space = enumerate_words(data, 5)
    names = {data.letters[i].name for w in space for i in w}
    assert names == {"id1", "id2"}
    assert len(space) == 10


def test_word_order_is_degree_then_length():
    space = enumerate_words(fixture("s2"), 4)
    for d in space.degrees:
        ws = space.words(d)
        assert list(ws) == sorted(ws, key=lambda w: (len(w), w))
        assert all(word_degree(fixture("s2"), w) == d for w in ws)


def test_b_on_k():
    data = fixture("k")
    assert b_apply(data, (0, 0)) == {}
    out = b_apply(data, (0, 0, 0))
    assert list(out) == [(0, 0)] and abs(out[(0, 0)]) == 1


def test_zero_operations_give_zero_b():
    data = AInftyData.build(["A"], {("A", "A"): [("x", 0), ("y", 1)]})
    space = enumerate_words(data, 4)
    assert all(b_apply(data, w) == {} for w in space)
    table = hochschild_homology(data, 4, (-2, 3))
    for h, n in table.dims.items():
        assert n == len(space.words(h))


def test_hh_of_k_is_one_dimensional():
    table = hochschild_homology(fixture("k"), 8)
    assert reliable_by_length(table) == {1: 1, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0}


def test_hh_of_directed_is_three_copies():
    k = reliable_by_length(hochschild_homology(fixture("k"), 7))
    d3 = reliable_by_length(hochschild_homology(fixture("directed3"), 7))
    assert d3 == {h: 3 * n for h, n in k.items()}


@pytest.mark.parametrize("size,arrows,length", [(2, {(1, 2): 1}, 5), (3, {(1, 2): 1, (2, 3): 1}, 4), (2, {(1, 2): 2}, 4)])
def test_hh_matches_unsuspended_oracle(size, arrows, length):
    data = exceptional_algebra(size, arrows)
    mult = {k: dict(v) for k, v in raw_ops(data).items() if len(k) == 2}
    want = ungraded_tables(mult, len(data.letters), length, cyclic=False)
    got = reliable_by_length(hochschild_homology(data, length))
    assert got and all(got[h] == want[h - 1] for h in got)


@pytest.mark.parametrize("name", FIXTURES)
def test_b_lowers_degree_and_squares_to_zero(name):
    data = fixture(name)
    for w in enumerate_words(data, 5):
        once = b_apply(data, w)
        assert all(word_degree(data, u) == word_degree(data, w) - 1 for u in once)
        assert b_apply_combo(data, once) == {}


def test_disjoint_union_splits():
    s2, k = fixture("s2"), fixture("k")
    homs = {("A", "A"): [("1", 0), ("v", 2)], ("B", "B"): [("u", 0)]}
    ops = [(("1", "1"), "1", 1), (("1", "v"), "v", 1), (("v", "1"), "v", 1), (("u", "u"), "u", 1)]
    both = AInftyData.build(["A", "B"], homs, ops, suspended=False)
    a_letters = {both.letter("1"), both.letter("v")}
    for w in enumerate_words(both, 5):
        side = set(w) <= a_letters
        for u in b_apply(both, w):
            assert (set(u) <= a_letters) == side
    window = (-4, 4)
    t = hochschild_homology(both, 5, window).dims
    t1 = hochschild_homology(s2, 5, window).dims
    t2 = hochschild_homology(k, 5, window).dims
    assert t == {h: t1.get(h, 0) + t2.get(h, 0) for h in t}


def test_explosion_guard():
    with pytest.raises(ExplosionGuard):
        enumerate_words(fixture("lambda2"), 8, cap=1000)


def test_prime_field_agrees_on_k():
    q = hochschild_homology(fixture("k"), 6).dims
    p = hochschild_homology(fixture("k"), 6, field=Field(101)).dims
    assert q == p


def test_window_limits_degrees():
    space, C, _ = hochschild_complex(fixture("s2"), 5, (0, 2))
    assert space.degrees == [0, 1, 2] and C.degrees == (0, 2)
    assert not space.reliable(0)


def test_identification_sign():
    assert identification_sign([0]) == 1
    assert identification_sign([1, 0]) == -1
    assert identification_sign([1, 1, 1]) == -1


@given(st.integers(1, 4), st.integers(0, 500))
def test_random_directed_hh_is_r_copies(r, seed):
    data = random_directed(r, seed)
    got = reliable_by_length(hochschild_homology(data, 5))
    assert got == {h: (r if h == 1 else 0) for h in got}
