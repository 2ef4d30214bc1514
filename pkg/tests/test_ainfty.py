from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclix.ainfty import (
    AInftyData,
    DegreeMismatch,
    NotComposable,
    UnknownMorphism,
    bar_apply,
    bar_apply_combo,
    check_strict_units,
    desuspend_convert,
    desuspension_sign,
    raw_ops,
    relation_residual,
    unsuspended_relation_residual,
    verify_ainfty,
)
from cyclix.modelzoo import coefficient_addresses, fixture, perturb, random_directed, sphere

FIXTURES = ["k", "s2", "cp2", "lambda1", "lambda2", "s3", "directed3", "exceptional3"]


def m3_only():
    """x in degree 1, y in degree 2, m_3(x, x, x) = y and nothing else."""
    return AInftyData.build(["A"], {("A", "A"): [("x", 1), ("y", 2)]}, [(("x", "x", "x"), "y", 5)], suspended=False)


def test_desuspension_sign_examples():
    assert desuspension_sign([4]) == 1
    assert desuspension_sign([1, 0]) == -1
    assert desuspension_sign([1, 1, 7]) == -1


def test_arity_two_conversion():
    # |ā| = 1 on the first input flips the sign
    data = AInftyData.build(["A"], {("A", "A"): [("1", 0), ("a", 2)]}, [(("a", "1"), "a", 3)], suspended=False)
    a, one = data.letter("a"), data.letter("1")
    assert data.letters[a].sdeg == 1
    assert data.m_bar((a, one)) == {a: Fraction(-3)}


def test_conversion_round_trip():
    data = m3_only()
    raw = raw_ops(data)
    assert desuspend_convert(data.letters, raw) == {k: dict(v) for k, v in data.ops.items()}


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        AInftyData.build(["A"], {("A", "A"): [("1", 0), ("v", 2)]}, [(("1", "1"), "v", 1)], suspended=False)


def test_not_composable():
    homs = {("A", "B"): [("f", 0)], ("B", "C"): [("g", 0)], ("A", "C"): [("h", 0)]}
    with pytest.raises(NotComposable):
        AInftyData.build(["A", "B", "C"], homs, [(("g", "f"), "h", 1)], suspended=False)
    data = AInftyData.build(["A", "B", "C"], homs, [(("f", "g"), "h", 1)], suspended=False)
    with pytest.raises(NotComposable):
        bar_apply(data, (data.letter("g"), data.letter("f")))


def test_unknown_and_ambiguous_names():
    homs = {("A", "A"): [("e", 0)], ("B", "B"): [("e", 0)]}
    data = AInftyData.build(["A", "B"], homs)
    with pytest.raises(UnknownMorphism):
        data.letter("e")
    assert data.letter("B>B.e") == 1
    with pytest.raises(UnknownMorphism):
        data.letter("nope")


def test_length_one_word_without_differential():
    data = fixture("s2")
    assert bar_apply(data, (data.letter("v"),)) == {}


def test_dg_coderivation_expansion():
    data = fixture("s2")
    one, v = data.letter("1"), data.letter("v")
    # m̄_1 = 0, so only the m̄_2 term survives
    assert bar_apply(data, (one, v)) == {(v,): data.m_bar((one, v))[v]}


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_satisfy_relations(name):
    data = fixture(name)
    assert verify_ainfty(data, 5).passed
    for k in range(1, 6):
        for w in data.composable_tuples(k):
            assert bar_apply_combo(data, bar_apply(data, w)) == {}, w


def test_m3_fixture():
    data = m3_only()
    assert verify_ainfty(data, 5).passed
    x, y = data.letter("x"), data.letter("y")
    assert set(bar_apply(data, (x, x, x, x))) == {(y, x), (x, y)}


def test_mutated_sphere_fails_at_arity_three():
    data = perturb(fixture("s2"), ("op", ("1", "v"), "v"), 2)
    report = verify_ainfty(data, 3)
    assert report.check("arity 2").passed
    assert not report.check("arity 3").passed


def _bar_squared_vanishes(data, m):
    return all(not bar_apply_combo(data, bar_apply(data, w)) for k in range(1, m + 1) for w in data.composable_tuples(k))


@given(st.sampled_from(FIXTURES), st.data(), st.sampled_from([0, 2, Fraction(-1, 3)]))
def test_verify_iff_bar_squared(name, draw, factor):
    data = fixture(name)
    ops_only = [a for a in coefficient_addresses(data) if a[0] == "op"]
    data = perturb(data, draw.draw(st.sampled_from(ops_only)), factor)
    m = 2 * data.max_arity - 1
    assert verify_ainfty(data, m).passed == _bar_squared_vanishes(data, m)


@given(st.integers(1, 4), st.integers(0, 10_000))
def test_random_directed_categories_are_ainfty(r, seed):
    data = random_directed(r, seed, max_dim=2)
    assert verify_ainfty(data, 3).passed


@pytest.mark.parametrize("name", FIXTURES)
def test_unsuspended_form_agrees(name):
    data = fixture(name)
    mutants = [data] + [perturb(data, a, 2) for a in coefficient_addresses(data) if a[0] == "op"][:6]
    for d in mutants:
        for k in (1, 2, 3):
            for w in d.composable_tuples(k):
                assert (not relation_residual(d, w)) == (not unsuspended_relation_residual(d, w)), w


def test_strict_units():
    data = sphere(2)
    assert check_strict_units(data, {"A": "1"}).passed
    bad = perturb(data, ("op", ("1", "v"), "v"), 2)
    assert not check_strict_units(bad, {"A": "1"}).passed
