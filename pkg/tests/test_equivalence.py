import random

from hypothesis import given, settings
from strategies import ex1_trace, seeds

from ccsklab.equivalence import (
    canonical_form,
    causally_equivalent,
    check_causal_consistency,
    parabolic_normal_form,
    traces_from,
)
from ccsklab.generate import random_standard, random_walk
from ccsklab.lts import FORWARD, Trace, forward_steps, reverse
from ccsklab.syntax import parse
from ccsklab.tracefile import walk


def is_parabolic(trace):
    dirs = [t.forward for t in trace]
    return dirs == sorted(dirs)


def test_ex1_normal_form():
    t = ex1_trace()
    nf = parabolic_normal_form(t)
    assert [str(s.label) for s in nf] == ["|L a[0]", "<|L 'b[1], |R b[1]>"]
    assert all(s.direction is FORWARD for s in nf)
    assert (nf.source, nf.target) == (t.source, t.target)
    assert causally_equivalent(t, nf)


def test_reflexive_and_interleavings():
    p = parse("a.0 | b.0")
    ab = walk(p, ["fwd |L a[0]", "fwd |R b[1]"])
    ba = walk(p, ["fwd |R b[1]", "fwd |L a[0]"])
    assert causally_equivalent(ab, ab)
    assert causally_equivalent(ab, ba) and causally_equivalent(ba, ab)
    assert canonical_form(ab) == canonical_form(ba)


def test_undo_cancels():
    (t, *_) = forward_steps(parse("a.0 | b.0"))
    loop = Trace(t.source, (t, reverse(t)))
    assert len(parabolic_normal_form(loop)) == 0
    assert causally_equivalent(loop, Trace(t.source))


def test_all_forward_unchanged():
    t = walk(parse("a.'b | b+c"), ["fwd |L a[0]", "fwd |L 'b[1]"])
    assert parabolic_normal_form(t) == t


def test_different_targets_not_equivalent():
    p = parse("a.0 + b.0")
    x, y = forward_steps(p)
    assert not causally_equivalent(Trace(p, (x,)), Trace(p, (y,)))


def test_consistency_examples():
    assert check_causal_consistency(parse("a.'b|b+c"), 4).ok
    assert check_causal_consistency(parse("!(a.0)"), 3).ok
    bad = check_causal_consistency(parse("!(a.0)|a[0].0"), 3, marking=False)
    assert not bad.ok
    x, y = bad.violations[0]
    assert (x.source, x.target) == (y.source, y.target)
    assert check_causal_consistency(parse("!(a.0)|a[0!].0"), 3).ok


def test_reduced_enumeration_skips_undo():
    p = parse("a.0")
    full = traces_from(p, 2)
    reduced = traces_from(p, 2, reduced=True)
    assert len(full) == 3 and len(reduced) == 2


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_normal_form_properties(seed):
    rng = random.Random(seed)
    t = random_walk(rng, random_standard(rng, 6), 5)
    nf = parabolic_normal_form(t)
    assert is_parabolic(nf)
    assert (nf.source, nf.target) == (t.source, t.target)
    assert len(nf) <= len(t)
    assert causally_equivalent(t, nf)
    cf = canonical_form(t)
    assert canonical_form(cf) == cf
