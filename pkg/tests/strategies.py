"""Hypothesis strategies for process terms."""

from hypothesis import strategies as st

from ccsklab.syntax import (
    NIL,
    Action,
    Bang,
    Key,
    KeyedPrefix,
    Par,
    Prefix,
    Restrict,
    Sum,
)

names = st.sampled_from(["a", "b", "c"])
actions = st.builds(Action, names, st.booleans())
keys = st.builds(Key, st.integers(0, 30), st.booleans())


def _extend(children):
    return st.one_of(
        st.builds(Prefix, actions, children),
        st.builds(KeyedPrefix, actions, keys, children),
        st.builds(Sum, children, children),
        st.builds(Par, children, children),
        st.builds(Restrict, children, names),
        st.builds(Bang, children),
    )


terms = st.recursive(st.just(NIL), _extend, max_leaves=12)


def _extend_std(children):
    return st.one_of(
        st.builds(Prefix, actions, children),
        st.builds(Sum, children, children),
        st.builds(Par, children, children),
        st.builds(Restrict, children, names),
    )


bang_free = st.recursive(st.just(NIL), _extend_std, max_leaves=8)
standard = st.one_of(bang_free, st.builds(Par, bang_free, st.builds(Bang, bang_free)), st.builds(Bang, bang_free))

seeds = st.integers(0, 2**32 - 1)


# The worked example trace: with m=0, n=1, n'=2 it walks
# a.'b | b + c through six steps back to a single synchronisation.
EX1_SOURCE = "a.'b | b + c"
EX1_KEYS = {"m": 0, "n": 1, "n'": 2}
EX1_SELECTORS = [
    "fwd |L a[m]",
    "fwd |L 'b[n]",
    "fwd |R c[n']",
    "bwd |L 'b[n]",
    "bwd |R c[n']",
    "fwd <|L 'b[n], |R b[n]>",
]
EX1_TARGETS = [
    "a[0].'b.0 | b.0 + c.0",
    "a[0].'b[1].0 | b.0 + c.0",
    "a[0].'b[1].0 | b.0 + c[2].0",
    "a[0].'b.0 | b.0 + c[2].0",
    "a[0].'b.0 | b.0 + c.0",
    "a[0].'b[1].0 | b[1].0 + c.0",
]


def ex1_trace(marking=True):
    from ccsklab.syntax import parse
    from ccsklab.tracefile import walk

    return walk(parse(EX1_SOURCE), EX1_SELECTORS, EX1_KEYS, marking)
