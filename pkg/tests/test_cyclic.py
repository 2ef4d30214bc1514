from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclix.ainfty import _add, raw_ops
from cyclix.cyclic import (
    Necklaces,
    canonicalize,
    check_well_defined,
    class_basis,
    cochain_is_cyclic,
    connes_complex,
    connes_homology,
    invariant_dimension,
    norm_N,
    symmetrize,
    t_bar,
    unsuspended_t,
)
from cyclix.exactlin import check_complex
from cyclix.hochschild import enumerate_words, identification_sign
from cyclix.modelzoo import exceptional_algebra, fixture, random_directed, random_exceptional
from oracles import brute_canonical, ungraded_tables

FIXTURES = ["k", "s2", "cp2", "lambda1", "lambda2", "s3", "directed3", "exceptional3"]

words = st.lists(st.integers(0, 3), min_size=1, max_size=8).map(tuple)
parities = st.lists(st.integers(0, 1), min_size=4, max_size=4)


def reliable(table):
    return {h: n for h, n in table.dims.items() if table.reliable[h]}


def test_t_bar_examples():
    assert t_bar((2,), [0, 0, 1]) == ((2,), 1)
    assert t_bar((0, 1), [1, 1]) == ((1, 0), -1)
    assert t_bar((0, 1), [1, 0]) == ((1, 0), 1)


def test_unsuspended_boundary_sign():
    # t_1(a_0, a_1) = (-1)^{1 + |a_1||a_0|} (a_1, a_0)
    for d0, d1 in product(range(3), repeat=2):
        assert unsuspended_t([d0, d1]) == ((1, 0), (-1) ** (1 + d0 * d1))


@given(st.lists(st.integers(-2, 3), min_size=1, max_size=6))
def test_suspension_intertwines_t(degrees):
    perm, s = unsuspended_t(degrees)
    lhs = s * identification_sign([degrees[i] for i in perm])
    _, s_bar = t_bar(tuple(range(len(degrees))), [(d - 1) & 1 for d in degrees])
    assert lhs == s_bar * identification_sign(degrees)


@given(words, parities)
def test_t_bar_has_order_length(w, par):
    u, sign = w, 1
    for _ in range(len(w)):
        u, s = t_bar(u, par)
        sign *= s
    assert (u, sign) == (w, 1)


def _apply_t(combo, par):
    out = {}
    for w, c in combo.items():
        u, s = t_bar(w, par)
        _add(out, u, s * c)
    return out


@given(words, parities)
def test_one_minus_t_kills_norm(w, par):
    n = norm_N(w, par)
    res = dict(n)
    for u, c in _apply_t(n, par).items():
        _add(res, u, -c)
    assert res == {}
    # N(1 - t̄) = 0 as well
    u, s = t_bar(w, par)
    res = dict(norm_N(w, par))
    for x, c in norm_N(u, par).items():
        _add(res, x, -s * c)
    assert res == {}


def test_norm_examples():
    assert norm_N((3,), [0, 0, 0, 1]) == {(3,): 1}
    # two odd letters: t̄(a, a) = -(a, a) and N cancels
    assert norm_N((0, 0), [1]) == {}


def test_canonicalize_examples():
    par = [1, 0]
    c = canonicalize((0, 1), par)
    assert c.representative == (0, 1) and c.sign == 1 and not c.vanishes
    u, s = t_bar((0, 1, 1), par)
    assert canonicalize(u, par).representative == (0, 1, 1)
    assert canonicalize(u, par).sign == s * canonicalize((0, 1, 1), par).sign
    assert canonicalize((0, 0), [1]).vanishes


@given(words, parities)
def test_canonicalize_matches_brute_force(w, par):
    c = canonicalize(w, par)
    best, sign, vanish = brute_canonical(w, par)
    assert c.representative == best and c.vanishes == vanish
    if not vanish:
        assert c.sign == sign


@given(st.lists(words, min_size=1, max_size=20), parities)
def test_batch_matches_single(ws, par):
    neck = Necklaces(par)
    batch = neck.batch(ws)
    assert batch == [canonicalize(w, par) for w in ws]


def test_ch_of_k():
    assert reliable(connes_homology(fixture("k"), 9)) == {1: 1, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1, 8: 0}


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_directed_is_r_copies(r):
    k = reliable(connes_homology(fixture("k"), 8))
    got = reliable(connes_homology(random_directed(r, seed=r), 8))
    assert got == {h: r * n for h, n in k.items()}


@pytest.mark.parametrize("size", [2, 3, 4])
def test_exceptional_collection(size):
    k = reliable(connes_homology(fixture("k"), 8))
    got = reliable(connes_homology(random_exceptional(size, seed=size), 8))
    assert got == {h: size * n for h, n in k.items()}


@pytest.mark.parametrize("size,arrows,length", [(2, {(1, 2): 1}, 5), (3, {(1, 2): 1, (2, 3): 1}, 4), (2, {(1, 2): 2}, 4)])
def test_one_object_collection_matches_oracle(size, arrows, length):
    data = exceptional_algebra(size, arrows)
    mult = {k: dict(v) for k, v in raw_ops(data).items() if len(k) == 2}
    want = ungraded_tables(mult, len(data.letters), length, cyclic=True)
    got = reliable(connes_homology(data, length))
    assert got and all(got[h] == want[h - 1] for h in got)
    k = reliable(connes_homology(fixture("k"), length))
    assert got == {h: size * n for h, n in k.items() if h in got}


@pytest.mark.parametrize("name", FIXTURES)
def test_connes_complex_is_a_complex(name):
    data = fixture(name)
    cc = connes_complex(data, 5)
    check_complex(cc.slice)
    neck = Necklaces(data.parities)
    check_well_defined(data, neck, cc.classes_by_degree)


@pytest.mark.parametrize("name", FIXTURES)
def test_invariants_match_coinvariants(name):
    data = fixture(name)
    space = enumerate_words(data, 5)
    classes = class_basis(space, Necklaces(data.parities))
    for d in space.degrees:
        assert invariant_dimension(space.words(d), data.parities) == len(classes.get(d, ()))


def test_cochain_is_cyclic_examples():
    data = fixture("s2")
    space = enumerate_words(data, 3)
    assert cochain_is_cyclic({}, space, data.parities)
    w = (data.letter("1"), data.letter("v"))
    assert not cochain_is_cyclic({w: 1}, space, data.parities)


@given(st.dictionaries(st.sampled_from(sorted(enumerate_words(fixture("s2"), 4))), st.integers(-3, 3), max_size=5))
def test_symmetrized_functionals_are_cyclic(f):
    data = fixture("s2")
    space = enumerate_words(data, 4)
    g = symmetrize(f, data.parities)
    assert cochain_is_cyclic(g, space, data.parities)
