"""Causal equivalence of traces, parabolic normal forms and the causal
consistency checker.

Deciding equivalence: both traces are closed under the two rewrites that
never lengthen a trace (cancelling ``t; reverse(t)`` and exchanging an
adjacent pair for a pair with the same endpoints and swapped labels); the
traces are equivalent when the closures meet.  Because inserting
``t; reverse(t)`` is unbounded, only a bounded number of insertions, drawn
from labels already present in the two traces, is tried on top of that.  A
negative answer therefore means "not equivalent within the bound".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .diamonds import exchanges
from .labels import collapse, label_key
from .lts import (
    BACKWARD,
    FORWARD,
    Trace,
    Transition,
    backward_steps,
    forward_steps,
    reverse,
    steps_with_label,
)
from .syntax import Process

Steps = tuple[Transition, ...]


class NoParabolicForm(RuntimeError):
    """A forward step followed by a backward one could be neither cancelled
    nor commuted."""

    def __init__(self, first: Transition, second: Transition):
        self.first, self.second = first, second
        super().__init__(f"cannot move {second.label} before {first.label}")


def _neighbours(steps: Steps, marking: bool):
    for i in range(len(steps) - 1):
        a, b = steps[i], steps[i + 1]
        if b == reverse(a):
            yield steps[:i] + steps[i + 2 :]
            continue
        for u, v in exchanges(a, b, marking):
            yield steps[:i] + (u, v) + steps[i + 2 :]


def closure(trace: Trace, marking: bool = True, limit: int = 50_000) -> set[Steps]:
    """Every step sequence reachable from ``trace`` by cancellations and
    exchanges."""
    start = trace.steps
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for nxt in _neighbours(cur, marking):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
                if len(seen) > limit:
                    raise RuntimeError("closure too large")
    return seen


def _shortest(steps: set[Steps]) -> set[Steps]:
    n = min(map(len, steps))
    return {s for s in steps if len(s) == n}


def _insertions(steps: Steps, source: Process, wanted, marking: bool):
    """``steps`` with one ``t; reverse(t)`` pair spliced in, for ``t`` whose
    collapsed label is in ``wanted``."""
    here = source
    for i in range(len(steps) + 1):
        for direction in (FORWARD, BACKWARD):
            for lab in wanted:
                for t in steps_with_label(here, direction, label_key(lab), marking):
                    if collapse(t.label) == lab:
                        yield steps[:i] + (t, reverse(t)) + steps[i:]
        if i < len(steps):
            here = steps[i].target


def causally_equivalent(
    t1: Trace, t2: Trace, marking: bool = True, insertions: int = 1
) -> bool:
    """Whether two coinitial, cofinal traces are causally equivalent (within
    ``insertions`` added cancellable pairs)."""
    if t1.source != t2.source or t1.target != t2.target:
        return False
    c1 = closure(t1, marking)
    c2 = closure(t2, marking)
    if c1 & c2:
        return True
    wanted = {collapse(t.label) for t in t1} | {collapse(t.label) for t in t2}
    frontier = _shortest(c1)
    for _ in range(insertions):
        grown: set[Steps] = set()
        for steps in frontier:
            for longer in _insertions(steps, t1.source, wanted, marking):
                if longer in grown:
                    continue
                reach = closure(Trace(t1.source, longer), marking)
                if reach & c2:
                    return True
                grown |= reach
        frontier = grown
    return False


# --------------------------------------------------------------------------
# Normal forms


@lru_cache(maxsize=100_000)
def _label_text(theta) -> tuple[str, str]:
    return str(collapse(theta)), str(theta)


def _order(t: Transition) -> tuple:
    return (t.direction is FORWARD,) + _label_text(t.label)


def parabolic_normal_form(trace: Trace, marking: bool = True) -> Trace:
    """An equivalent trace made of backward steps followed by forward steps,
    with no adjacent ``t; reverse(t)`` left."""
    steps = list(trace.steps)
    while True:
        for i in range(len(steps) - 1):
            if steps[i + 1] == reverse(steps[i]):
                del steps[i : i + 2]
                break
        else:
            for i in range(len(steps) - 1):
                a, b = steps[i], steps[i + 1]
                if a.direction is FORWARD and b.direction is BACKWARD:
                    found = exchanges(a, b, marking)
                    if not found:
                        raise NoParabolicForm(a, b)
                    steps[i : i + 2] = found[0]
                    break
            else:
                return Trace(trace.source, tuple(steps))


def _sort_block(steps: list[Transition], lo: int, hi: int, marking: bool) -> None:
    """Greedy lexicographically least reordering of ``steps[lo:hi]`` by
    adjacent exchanges."""
    for pos in range(lo, hi):
        best = None
        for j in range(pos, hi):
            trial = steps[pos:hi]
            k = j - pos
            ok = True
            while k > 0:
                found = exchanges(trial[k - 1], trial[k], marking)
                if not found:
                    ok = False
                    break
                trial[k - 1 : k + 1] = found[0]
                k -= 1
            if ok and (best is None or _order(trial[0]) < _order(best[0])):
                best = trial
        steps[pos:hi] = best


def canonical_form(trace: Trace, marking: bool = True) -> Trace:
    """Parabolic normal form with each block put in greedy label order.
    Equal canonical forms imply equivalence."""
    steps = list(parabolic_normal_form(trace, marking).steps)
    split = next((i for i, t in enumerate(steps) if t.direction is FORWARD), len(steps))
    _sort_block(steps, 0, split, marking)
    _sort_block(steps, split, len(steps), marking)
    return Trace(trace.source, tuple(steps))


# --------------------------------------------------------------------------
# Causal consistency


def traces_from(p: Process, depth: int, marking: bool = True, reduced: bool = False) -> list[Trace]:
    """All traces of length at most ``depth`` from ``p``; forward steps use the
    canonical fresh key.

    With ``reduced`` no trace contains a step immediately followed by its
    reverse.  Such a trace is equivalent to the shorter one with the pair
    removed, which is enumerated anyway and ends at the same process.
    """
    out = [Trace(p)]
    layer = [Trace(p)]
    for _ in range(depth):
        nxt = []
        for tr in layer:
            here = tr.target
            undo = reverse(tr.steps[-1]) if (reduced and tr.steps) else None
            for t in forward_steps(here, marking=marking) + backward_steps(here, marking):
                if t != undo:
                    nxt.append(tr.then(t))
        out.extend(nxt)
        layer = nxt
    return out


@dataclass
class ConsistencyReport:
    process: Process
    depth: int
    marking: bool
    traces: int = 0
    cofinal_groups: int = 0
    violations: list[tuple[Trace, Trace]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_causal_consistency(p: Process, depth: int, marking: bool = True) -> ConsistencyReport:
    """Look for coinitial, cofinal traces of length ``<= depth`` from ``p``
    that are not causally equivalent.

    Equivalence is closed under composition, so only one representative per
    class is extended: if ``U ~ V`` then ``U; t ~ V; t``.  Traces are grown
    breadth first and compared with the classes already known at their
    target; a canonical form is computed only when a target is reached by a
    second class.
    """
    report = ConsistencyReport(p, depth, marking)
    start = Trace(p)
    classes: dict[Process, list[list]] = {p: [[start, None]]}
    layer = [start]
    report.traces = 1
    for _ in range(depth):
        nxt = []
        for tr in layer:
            undo = reverse(tr.steps[-1]) if tr.steps else None
            here = tr.target
            for t in forward_steps(here, marking=marking) + backward_steps(here, marking):
                if t == undo:
                    continue  # equivalent to the prefix, a known class
                u = tr.then(t)
                report.traces += 1
                known = classes.get(u.target)
                if known is None:
                    classes[u.target] = [[u, None]]
                    nxt.append(u)
                    continue
                if _joins(u, known, marking):
                    continue
                report.violations.append((known[0][0], u))
                known.append([u, _canon(u, marking)])
        layer = nxt
    report.cofinal_groups = len(classes)
    return report


def _canon(tr: Trace, marking: bool) -> Steps:
    try:
        return canonical_form(tr, marking).steps
    except NoParabolicForm:
        return tr.steps


def _joins(u: Trace, known: list[list], marking: bool) -> bool:
    cu = _canon(u, marking)
    for entry in known:
        if entry[1] is None:
            entry[1] = _canon(entry[0], marking)
        if entry[1] == cu:
            return True
    return any(causally_equivalent(entry[0], u, marking) for entry in known)
