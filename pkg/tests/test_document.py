import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclix.ainfty import DegreeMismatch, NotComposable
from cyclix.document import ParseError, load, parse, save
from cyclix.exactlin import Field
from cyclix.modelzoo import BUILTIN, fixture, random_directed

SPHERE = """\
cyclix-category 1
field q
object A   # a single object
max-arity 2
hom A A 1=0 v=2
op raw 1,1 -> 1 1
op raw 1,v -> v 1
op raw v,1 -> v 1
pairing 2
pair 1 v 1
end
"""


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_round_trip_builtins(name):
    data = fixture(name)
    text = save(data)
    again = load(text)
    assert again == data
    assert save(again) == text


@given(st.integers(1, 4), st.integers(0, 500))
def test_round_trip_random(r, seed):
    data = random_directed(r, seed, max_dim=2)
    assert load(save(data)) == data


def test_raw_ops_match_builtin_sphere():
    assert load(SPHERE) == fixture("s2").replace(provenance=None)


def test_field_line():
    doc = parse(SPHERE.replace("field q", "field fp:7"))
    assert doc.field == Field.parse("fp:7")
    with pytest.raises(ParseError) as e:
        parse(SPHERE.replace("field q", "field fp:8"))
    assert e.value.line == 2


def test_degree_mismatch_names_line():
    bad = SPHERE.replace("op raw 1,v -> v 1", "op raw 1,v -> 1 1")
    with pytest.raises(DegreeMismatch, match="line 7"):
        load(bad)


def test_not_composable():
    text = """\
cyclix-category 1
object A
object B
hom A B f=0
op raw f,f -> f 1
end
"""
    with pytest.raises(NotComposable, match="line 5"):
        load(text)


def test_truncated_document():
    lines = SPHERE.splitlines()
    for cut in range(1, len(lines) - 1):
        with pytest.raises(ParseError) as e:
            load("\n".join(lines[:cut]) + "\n")
        assert e.value.line is not None


@pytest.mark.parametrize(
    "old,new,line",
    [
        ("max-arity 2", "max-arity two", 4),
        ("hom A A 1=0 v=2", "hom A A 1=0 v", 5),
        ("pair 1 v 1", "pair 1 w 1", None),
        ("op raw v,1 -> v 1", "op raw v,1 => v 1", 8),
        ("pairing 2", "pairings 2", 9),
        ("pair 1 v 1", "pair 1 v 1/0", 10),
    ],
)
def test_bad_lines(old, new, line):
    with pytest.raises(ParseError) as e:
        load(SPHERE.replace(old, new))
    if line is not None:
        assert e.value.line == line


def test_header_and_trailing_content():
    with pytest.raises(ParseError):
        load("")
    with pytest.raises(ParseError):
        load(SPHERE.replace("cyclix-category 1", "cyclix-category 2"))
    with pytest.raises(ParseError):
        load(SPHERE + "object B\n")


def test_comments_and_blank_lines_ignored():
    text = "# leading comment\n\n" + SPHERE.replace("\n", "  # trailing\n\n")
    assert load(text) == load(SPHERE)
