import json

import pytest
from strategies import EX1_KEYS, EX1_SOURCE, ex1_trace

from ccsklab.lts import Trace
from ccsklab.syntax import parse
from ccsklab.tracefile import (
    SelectorError,
    TraceFileError,
    dump,
    dumps,
    json_dumps,
    load,
    loads,
    parse_key_names,
    select,
    trace_from_json,
    walk,
)


def test_ex1_text():
    text = dumps(ex1_trace())
    assert text.splitlines() == [
        "a.'b.0 | b.0 + c.0",
        "forward |L a[0] :: a[0].'b.0 | b.0 + c.0",
        "forward |L 'b[1] :: a[0].'b[1].0 | b.0 + c.0",
        "forward |R c[2] :: a[0].'b[1].0 | b.0 + c[2].0",
        "backward |L 'b[1] :: a[0].'b.0 | b.0 + c[2].0",
        "backward |R c[2] :: a[0].'b.0 | b.0 + c.0",
        "forward <|L 'b[1], |R b[1]> :: a[0].'b[1].0 | b[1].0 + c.0",
    ]


def test_round_trips(tmp_path):
    t = ex1_trace()
    assert loads(dumps(t)) == t
    assert trace_from_json(json.loads(json_dumps(t))) == t
    path = tmp_path / "ex1.trace"
    dump(t, path)
    assert load(path) == t


def test_comments_and_blank_lines():
    text = "# header\n\na.0   # the source\nforward a[0] :: a[0].0\n"
    t = loads(text)
    assert len(t) == 1 and t.target == parse("a[0].0")


def test_empty_trace():
    assert loads("a.0\n") == Trace(parse("a.0"))
    assert walk(parse("a.0"), []) == Trace(parse("a.0"))
    with pytest.raises(TraceFileError):
        loads("# nothing\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("a.0\nsideways a[0] :: a[0].0\n", 2),
        ("a.0\nforward a[0] a[0].0\n", 2),
        ("a.0\nforward a[0] :: a[0].(\n", 2),
        ("a.0\nforward a[1] :: b[1].0\n", 2),
        ("a.0\n\nforward a[0] :: a[0].0\nforward a[0] :: a[0].0\n", 4),
    ],
)
def test_errors_carry_the_line(text, line):
    with pytest.raises(TraceFileError) as info:
        loads(text)
    assert info.value.line == line


def test_unchecked_load_accepts_any_step():
    t = loads("a.0\nforward a[1] :: b[1].0\n", check=False)
    assert len(t) == 1


def test_selectors():
    p = parse(EX1_SOURCE)
    assert str(select(p, "fwd |L a[m]", EX1_KEYS).label) == "|L a[0]"
    with pytest.raises(SelectorError):
        select(p, "fwd |L b[0]")
    with pytest.raises(SelectorError):
        select(p, "jump |L a[0]")
    with pytest.raises(SelectorError):
        select(p, "fwd |L a[")


def test_key_names():
    assert parse_key_names("m=0, n=1,n'=2") == EX1_KEYS
    assert parse_key_names("") == {}
    with pytest.raises(ValueError):
        parse_key_names("m:0")
