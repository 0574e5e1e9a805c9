import random

from hypothesis import given, settings
from strategies import seeds

from ccsklab import plain
from ccsklab.generate import random_standard, random_term, random_walk
from ccsklab.labels import label_action, label_key
from ccsklab.lts import backward_steps, forward_steps, fresh_key
from ccsklab.syntax import TAU_ACTION, Action, is_standard, parse, shape_problems

a, b = Action("a"), Action("b")


def test_forward_moves():
    got = plain.forward(parse("a.'b | b+c"), 0)
    assert got == {
        (a, parse("a[0].'b | b+c")),
        (b, parse("a.'b | b[0]+c")),
        (Action("c"), parse("a.'b | b+c[0]")),
    }
    tau = plain.forward(parse("a.0 | 'a.0"), 3)
    assert (TAU_ACTION, parse("a[3].0 | 'a[3].0")) in tau


def test_backward_moves():
    assert plain.backward(parse("!(a.0) | a[0].0"), marking=False) == {
        (a, 0, parse("!(a.0)")),
        (a, 0, parse("!(a.0) | a.0")),
    }
    assert plain.backward(parse("!(a.0) | a[0!].0")) == {(a, 0, parse("!(a.0)"))}


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_agrees_with_proved_lts(seed):
    rng = random.Random(seed)
    p = random_walk(rng, random_standard(rng, 8), 6).target
    k = fresh_key(p).index
    fwd = {(label_action(t.label), t.target) for t in forward_steps(p)}
    assert plain.forward(p, k) == fwd
    bwd = {(label_action(t.label), label_key(t.label).index, t.target) for t in backward_steps(p)}
    assert plain.backward(p) == bwd


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_generators(seed):
    rng = random.Random(seed)
    p = random_standard(rng, 8)
    assert is_standard(p)
    assert shape_problems(p) == []
    q = random_walk(rng, p, 6).target
    assert shape_problems(q) == []
    random_term(rng, 8)  # any shape, used for printer round trips
