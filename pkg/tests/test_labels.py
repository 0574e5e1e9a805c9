import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsklab.labels import (
    BANG,
    PAR_L,
    PAR_R,
    act,
    collapse,
    has_bang,
    is_well_formed,
    label_action,
    label_from_json,
    label_key,
    label_to_json,
    parse_label,
    sync,
)
from ccsklab.syntax import Action, Key, ParseError

a, b, c = Action("a"), Action("b"), Action("c")
a_, b_ = Action("a", True), Action("b", True)
tags = st.sampled_from([PAR_L, PAR_R, BANG])


@st.composite
def labels(draw):
    k = Key(draw(st.integers(0, 9)))
    path = tuple(draw(st.lists(tags, max_size=4)))
    if draw(st.booleans()):
        x = draw(st.sampled_from([a, b, c]))
        return act(x, k, *path)
    x = draw(st.sampled_from([a, b]))
    left = act(x, k, PAR_L, *draw(st.lists(tags, max_size=2)))
    right = act(x.complement(), k, PAR_R, *draw(st.lists(tags, max_size=2)))
    return sync(left, right, *path)


def test_text_syntax():
    theta = parse_label("! <|L a[3] , |R 'a[3]>")
    assert theta == sync(act(a, Key(3), PAR_L), act(a_, Key(3), PAR_R), BANG)
    assert str(theta) == "! <|L a[3], |R 'a[3]>"
    assert parse_label("|L |R c[0!]") == act(c, Key(0, True), PAR_L, PAR_R)


def test_symbolic_keys():
    names = {"m": 0, "n'": 2}
    assert parse_label("|L a[m]", names) == act(a, Key(0), PAR_L)
    assert parse_label("|R c[n']", names) == act(c, Key(2), PAR_R)
    with pytest.raises(ParseError):
        parse_label("|L a[q]", names)


@pytest.mark.parametrize("text", ["|X a[0]", "a", "<|L a[0]>", "|L a[0] junk"])
def test_bad_labels(text):
    with pytest.raises(ParseError):
        parse_label(text)


def test_action_and_key():
    assert label_action(act(a, Key(0), PAR_L)) == a
    s = sync(act(b_, Key(4), PAR_L), act(b, Key(4), PAR_R))
    assert label_action(s).is_tau
    assert label_key(s) == Key(4)
    assert label_key(act(c, Key(7), PAR_R)) == Key(7)
    assert label_key(act(a, Key(2), BANG)) == Key(2)


def test_collapse_examples():
    assert collapse(act(a, Key(0), BANG)) == act(a, Key(0), PAR_R)
    assert collapse(act(a, Key(1), PAR_L)) == act(a, Key(1), PAR_L)
    inner = sync(act(a, Key(0), PAR_L), act(a_, Key(0), PAR_R), BANG)
    assert collapse(inner) == sync(act(a, Key(0), PAR_L), act(a_, Key(0), PAR_R), PAR_R)
    nested = sync(act(a, Key(0), PAR_L, BANG), act(a_, Key(0), PAR_R))
    assert collapse(nested) == sync(act(a, Key(0), PAR_L, PAR_R), act(a_, Key(0), PAR_R))


@given(labels())
def test_collapse_idempotent_and_bang_free(theta):
    once = collapse(theta)
    assert collapse(once) == once
    assert not has_bang(once)
    assert label_key(once) == label_key(theta)
    assert label_action(once) == label_action(theta)


@given(labels())
def test_text_round_trip(theta):
    assert parse_label(str(theta)) == theta


@given(labels())
def test_json_round_trip(theta):
    assert label_from_json(label_to_json(theta)) == theta


def test_well_formedness():
    assert is_well_formed(sync(act(a, Key(1), PAR_L), act(a_, Key(1), PAR_R)))
    # a sync needs complementary actions on one key, left part under |L
    assert not is_well_formed(sync(act(a, Key(1), PAR_L), act(a, Key(1), PAR_R)))
    assert not is_well_formed(sync(act(a, Key(1), PAR_L), act(a_, Key(2), PAR_R)))
    assert not is_well_formed(sync(act(a, Key(1), PAR_R), act(a_, Key(1), PAR_L)))
