import random
from collections import Counter

import pytest
from hypothesis import given, settings
from strategies import EX1_TARGETS, ex1_trace, seeds

from ccsklab.generate import random_standard, random_walk
from ccsklab.labels import label_key, parse_label
from ccsklab.lts import (
    BACKWARD,
    FORWARD,
    NonConfluentOrigin,
    Trace,
    TraceError,
    Transition,
    backward_steps,
    focus,
    forward_steps,
    fresh_key,
    is_derivable,
    origin,
    origins,
    primary_connector,
    reverse,
    reverse_trace,
    steps,
)
from ccsklab.syntax import (
    Key,
    check_keys,
    is_standard,
    iter_keyed,
    key_indices,
    parse,
    pretty,
)


def labels_of(ts):
    return [str(t.label) for t in ts]


def reachable(seed, marking=True):
    rng = random.Random(seed)
    return random_walk(rng, random_standard(rng, 8), 6, marking).target


def test_ex1_forward_steps():
    assert labels_of(forward_steps(parse("a.'b | b+c"))) == ["|L a[0]", "|R b[0]", "|R c[0]"]


def test_nil_is_stuck():
    assert forward_steps(parse("0")) == []
    assert backward_steps(parse("0")) == []


def test_replication_steps():
    got = labels_of(forward_steps(parse("!(a.'a + 'a)")))
    assert "! <|L a[0], |R 'a[0]>" in got
    # the spawned copy may also synchronise the other way round
    assert got == ["! a[0]", "! 'a[0]", "! <|L a[0], |R 'a[0]>", "! <|L 'a[0], |R a[0]>"]


def test_spawned_copy_is_marked():
    (t, *_) = forward_steps(parse("!(a.'a + 'a)"))
    assert pretty(t.target) == "!(a.'a.0 + 'a.0) | a[0!].'a.0 + 'a.0"
    assert pretty(forward_steps(parse("!(a.0)"), marking=False)[0].target) == "!a.0 | a[0].0"


def test_future_self_sync_after_one_step():
    first = forward_steps(parse("!(a.'a + 'a)"))[0]
    theta = parse_label("<|L ! a[1], |R 'a[1]>")
    hits = [t for t in forward_steps(first.target) if t.label == theta]
    assert len(hits) == 1
    assert pretty(hits[0].target) == "!(a.'a.0 + 'a.0) | a[1!].'a.0 + 'a.0 | a[0!].'a[1].0 + 'a.0"


def test_backward_examples():
    (t,) = backward_steps(parse("a[0].0"))
    assert (str(t.label), pretty(t.target)) == ("a[0]", "a.0")
    unmarked = backward_steps(parse("!(a.0) | a[0].0"), marking=False)
    assert sorted(labels_of(unmarked)) == ["! a[0]", "|R a[0]"]
    (t,) = backward_steps(parse("!(a.0) | a[0!].0"))
    assert (str(t.label), pretty(t.target)) == ("! a[0]", "!a.0")


def test_reverse_examples():
    (t,) = forward_steps(parse("a.0"))
    r = reverse(t)
    assert r == Transition(parse("a[0].0"), BACKWARD, t.label, parse("a.0"))
    assert reverse(r) == t
    assert r in backward_steps(t.target)


def test_origin_examples():
    assert origin(parse("a[0].'b[1].0")) == parse("a.'b.0")
    p = parse("a.0 | !b.0")
    assert origin(p) == p
    with pytest.raises(NonConfluentOrigin) as info:
        origin(parse("!(a.0) | a[0].0"), marking=False)
    assert set(info.value.origins) == {parse("!(a.0)"), parse("!(a.0) | a.0")}


def test_focus_examples():
    t = forward_steps(parse("(a[0].b.0 + c.0)\\d"))[0]
    sub, st = focus(t)
    assert sub == parse("b.0")
    assert primary_connector(sub) == "prefix"
    assert str(st.label) == "b[1]"

    t = forward_steps(parse("a.0 | b.0"))[0]
    assert focus(t)[0] == t.source

    t = next(t for t in forward_steps(parse("e[5].(a.0|b.0)")) if str(t.label) == "|R b[0]")
    sub, st = focus(t)
    assert sub == parse("a.0 | b.0")
    assert primary_connector(sub) == "parallel"
    assert st.target == parse("a.0 | b[0].0")


def test_explicit_key():
    (t, *_) = forward_steps(parse("a.0 | b.0"), key=7)
    assert label_key(t.label) == Key(7)
    # a key already in use cannot be chosen
    assert forward_steps(parse("a[3].0 | b.0"), key=3) == []


def test_trace_composability():
    trace = ex1_trace()
    assert [pretty(t.target) for t in trace] == EX1_TARGETS
    assert [t.direction for t in trace] == [FORWARD] * 3 + [BACKWARD] * 2 + [FORWARD]
    with pytest.raises(TraceError):
        Trace(trace.source, (trace[1],))
    back = reverse_trace(trace)
    assert back.source == trace.target and back.target == trace.source


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_step_invariants(seed):
    p = reachable(seed)
    check_keys(p)
    fresh = fresh_key(p)
    assert fresh.index not in key_indices(p)
    for t in forward_steps(p):
        assert label_key(t.label).index == fresh.index
        check_keys(t.target)
        assert is_derivable(t)
        assert reverse(t) in backward_steps(t.target)
    back = backward_steps(p)
    counts = Counter(label_key(t.label).index for t in back)
    assert all(n == 1 for n in counts.values()), "marked backward steps share a key"
    for t in back:
        assert reverse(t) in forward_steps(t.target, label_key(t.label))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_origin_is_standard_and_unique(seed):
    p = reachable(seed)
    found, stuck = origins(p)
    assert not stuck
    assert len(found) == 1
    (o,) = found
    assert is_standard(o)
    assert o == origin(p)


def test_origin_walk_length_bound():
    p = reachable(11)
    here, n = p, 0
    while backward_steps(here):
        here = backward_steps(here)[0].target
        n += 1
    assert n <= sum(1 for _ in iter_keyed(p))


def test_steps_direction_filter():
    p = parse("a[0].0 | b.0")
    assert steps(p, FORWARD) == forward_steps(p)
    assert steps(p, BACKWARD) == backward_steps(p)
    assert steps(p) == forward_steps(p) + backward_steps(p)
