"""Commuting concurrent transitions.

Swapped pairs are found by re-deriving candidate steps from the endpoints
and keeping those whose labels agree with the originals up to
:func:`~ccsklab.labels.collapse`.  Exact label matches come first.
"""

from __future__ import annotations

from functools import lru_cache

from .causality import coinitial_concurrent, labels_concurrent
from .labels import collapse, label_key
from .lts import BACKWARD, FORWARD, Transition, reverse, steps_with_label


class NotConcurrent(ValueError):
    """The pair is causally dependent, so it must not be commuted."""


class NotComposable(ValueError):
    pass


class MissingDiamond(AssertionError):
    """A concurrent pair admits no commuted form; the semantics is at fault."""


def exchanges(t1: Transition, t2: Transition, marking: bool = True) -> list[tuple[Transition, Transition]]:
    """All pairs ``u2; u1`` with ``u2`` like ``t2`` and ``u1`` like ``t1``
    (same directions, collapsed labels equal) going from the source of ``t1``
    to the target of ``t2``.  No concurrency check is made."""
    if t1.target != t2.source:
        raise NotComposable("transitions are not composable")
    return list(_exchanges(t1, t2, marking))


@lru_cache(maxsize=200_000)
def _exchanges(t1: Transition, t2: Transition, marking: bool) -> tuple[tuple[Transition, Transition], ...]:
    start, end = t1.source, t2.target
    want1, want2 = collapse(t1.label), collapse(t2.label)
    found = []
    for u2 in steps_with_label(start, t2.direction, label_key(t2.label), marking):
        if collapse(u2.label) != want2:
            continue
        for u1 in steps_with_label(u2.target, t1.direction, label_key(t1.label), marking):
            if u1.target == end and collapse(u1.label) == want1:
                found.append((u2, u1))
    found.sort(key=lambda pair: (pair[0].label != t2.label) + (pair[1].label != t1.label))
    return tuple(found)


def commute(t1: Transition, t2: Transition, marking: bool = True) -> tuple[Transition, Transition]:
    """Swap a composable concurrent pair, whatever the directions."""
    if t1.target != t2.source:
        raise NotComposable("transitions are not composable")
    if not labels_concurrent(t1.label, t2.label):
        raise NotConcurrent(f"{t1.label} and {t2.label} are not concurrent")
    found = exchanges(t1, t2, marking)
    if not found:
        raise MissingDiamond(f"no commuted form for {t1} ; {t2}")
    return found[0]


def commute_forward(t1: Transition, t2: Transition, marking: bool = True) -> tuple[Transition, Transition]:
    """Forward diamond: ``X -θ1-> X1 -θ2-> Y`` becomes ``X -θ2-> X2 -θ1-> Y``."""
    if not (t1.direction is FORWARD and t2.direction is FORWARD):
        raise ValueError("forward diamond needs two forward transitions")
    return commute(t1, t2, marking)


def commute_sideways(t1: Transition, t2: Transition, marking: bool = True) -> tuple[Transition, Transition]:
    """Sideways diamond: ``X -θ1-> X1 ~θ2~> Y`` becomes ``X ~θ2~> X2 -θ1-> Y``."""
    if not (t1.direction is FORWARD and t2.direction is BACKWARD):
        raise ValueError("sideways diamond needs a forward then a backward transition")
    return commute(t1, t2, marking)


def close_square(t1: Transition, t2: Transition, marking: bool = True) -> tuple[Transition, Transition]:
    """For coinitial concurrent ``t1: X -> X1`` and ``t2: X -> X2`` return
    ``t1': X1 -> Y`` (labelled like ``t2``) and ``t2': X2 -> Y`` (labelled
    like ``t1``)."""
    if t1.source != t2.source:
        raise ValueError("transitions are not coinitial")
    if not coinitial_concurrent(t1, t2):
        raise NotConcurrent(f"{t1.label} and {t2.label} are not concurrent")
    s1, s2 = commute(reverse(t1), t2, marking)
    return s1, reverse(s2)
