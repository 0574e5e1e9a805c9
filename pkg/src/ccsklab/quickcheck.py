"""Randomised property suites.

Case ``i`` of a run with seed ``s`` draws its process from
``random.Random(s + i)``, so a failure is replayed with ``--seed s+i
--count 1``.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cache

from . import plain
from .causality import (
    coinitial_concurrent,
    concurrent_in_trace,
    labels_concurrent,
)
from .diamonds import MissingDiamond, close_square, commute, exchanges
from .equivalence import check_causal_consistency
from .generate import random_standard, random_walk
from .labels import collapse, label_action, label_key
from .lts import (
    Trace,
    Transition,
    backward_steps,
    forward_steps,
    fresh_key,
    origins,
    reverse,
    steps,
)
from .syntax import Process, iter_keyed, pretty


@dataclass
class Failure:
    seed: int
    process: Process
    detail: str

    def __str__(self) -> str:
        return f"seed {self.seed}: {pretty(self.process)}\n  {self.detail}"


@dataclass
class SuiteResult:
    suite: str
    seed: int
    count: int
    marking: bool
    checks: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class Case:
    seed: int
    process: Process
    marking: bool
    depth: int
    checks: int = 0
    problems: list[str] = field(default_factory=list)

    def check(self, ok: bool, detail: Callable[[], str] | str) -> None:
        self.checks += 1
        if not ok:
            self.problems.append(detail() if callable(detail) else detail)


def _show(t: Transition) -> str:
    return f"{t.direction.value} {t.label}"


# --------------------------------------------------------------------------
# Pair enumeration


def composable_pairs(p: Process, marking: bool, kinds: str):
    """Composable ``t1; t2`` starting at ``p`` whose direction pair (``"FF"``,
    ``"FB"``, ...) is in ``kinds``."""
    for t1 in steps(p, marking=marking):
        for t2 in steps(t1.target, marking=marking):
            kind = ("F" if t1.forward else "B") + ("F" if t2.forward else "B")
            if kind in kinds:
                yield t1, t2


def coinitial_pairs(p: Process, marking: bool):
    """Distinct transitions leaving ``p``; the second forward step takes a key
    other than the first one's so the two can be combined."""
    k = fresh_key(p).index
    first = forward_steps(p, k, marking) + backward_steps(p, marking)
    second = forward_steps(p, k + 1, marking) + backward_steps(p, marking)
    for t1 in first:
        for t2 in second:
            if t1 != t2 and not (t1.forward and t2.forward and t1.label == t2.label):
                yield t1, t2


# --------------------------------------------------------------------------
# Suites


def check_loop(c: Case) -> None:
    p, m = c.process, c.marking
    for t in forward_steps(p, marking=m):
        back = backward_steps(t.target, m)
        c.check(reverse(t) in back, lambda: f"no reverse for {_show(t)}")
        c.check(reverse(reverse(t)) == t, "reverse is not an involution")
    for t in backward_steps(p, m):
        fwd = forward_steps(t.target, label_key(t.label), m)
        c.check(reverse(t) in fwd, lambda: f"no reverse for {_show(t)}")
    # predecessors through p's successors come back to p exactly once per step
    for t in forward_steps(p, marking=m):
        into_p = [u for u in backward_steps(t.target, m) if u.target == p and u.label == t.label]
        c.check(len(into_p) == 1, lambda: f"{len(into_p)} reverses of {_show(t)}")


def _diamond(c: Case, kinds: str) -> None:
    m = c.marking
    for t1, t2 in composable_pairs(c.process, m, kinds):
        found = exchanges(t1, t2, m)
        if labels_concurrent(t1.label, t2.label):
            try:
                u2, u1 = commute(t1, t2, m)
                ok = (
                    u2.source == t1.source
                    and u1.target == t2.target
                    and collapse(u2.label) == collapse(t2.label)
                    and collapse(u1.label) == collapse(t1.label)
                )
                c.check(ok, lambda: f"bad commutation of {_show(t1)} ; {_show(t2)}")
            except MissingDiamond:
                c.check(False, lambda: f"concurrent {_show(t1)} ; {_show(t2)} do not commute")
        else:
            c.check(
                not found,
                lambda: f"dependent {_show(t1)} ; {_show(t2)} commute as "
                f"{_show(found[0][0])} ; {_show(found[0][1])}",
            )


def check_fwd_diamond(c: Case) -> None:
    _diamond(c, "FF")


def check_side_diamond(c: Case) -> None:
    _diamond(c, "FB")


def check_square(c: Case) -> None:
    m = c.marking
    for t1, t2 in coinitial_pairs(c.process, m):
        if not coinitial_concurrent(t1, t2):
            continue
        try:
            s1, s2 = close_square(t1, t2, m)
        except MissingDiamond:
            c.check(False, lambda: f"square {_show(t1)} / {_show(t2)} does not close")
            continue
        ok = (
            s1.source == t1.target
            and s2.source == t2.target
            and s1.target == s2.target
            and s1.direction is t2.direction
            and s2.direction is t1.direction
            and collapse(s1.label) == collapse(t2.label)
            and collapse(s2.label) == collapse(t1.label)
        )
        c.check(ok, lambda: f"bad square for {_show(t1)} / {_show(t2)}")


def check_bwd_conc(c: Case) -> None:
    # every process on the way back to the origin, not just the start
    seen = {c.process}
    todo = [c.process]
    while todo:
        back = backward_steps(todo.pop(), c.marking)
        for i, t1 in enumerate(back):
            for t2 in back[i + 1 :]:
                c.check(
                    coinitial_concurrent(t1, t2),
                    lambda: f"backward {t1.label} and {t2.label} from {pretty(t1.source)} are not concurrent",
                )
        for t in back:
            if t.target not in seen:
                seen.add(t.target)
                todo.append(t.target)


def check_wellfounded(c: Case) -> None:
    p, m = c.process, c.marking
    bound = sum(1 for _ in iter_keyed(p))

    @cache
    def longest(q: Process) -> int:
        return max((1 + longest(t.target) for t in backward_steps(q, m)), default=0)

    n = longest(p)
    c.check(n <= bound, lambda: f"backward walk of length {n} exceeds {bound} keyed prefixes")
    found, stuck = origins(p, m)
    c.check(not stuck, lambda: f"backtracking gets stuck at {pretty(next(iter(stuck)))}")
    c.check(len(found) == 1, lambda: f"{len(found)} distinct origins: " + ", ".join(map(pretty, found)))


def check_consistency(c: Case) -> None:
    report = check_causal_consistency(c.process, c.depth, c.marking)
    for a, b in report.violations:
        c.check(False, lambda: "not equivalent: " + " ; ".join(map(_show, a)) + "  vs  " + " ; ".join(map(_show, b)))
    c.checks += report.traces


def check_projection(c: Case) -> None:
    p, m = c.process, c.marking
    k = fresh_key(p).index
    oracle = plain.moves(p, k, m)
    for t in steps(p, marking=m):
        move = plain.Move(t.forward, label_action(t.label), label_key(t.label).index, t.target)
        c.check(move in oracle, lambda: f"{_show(t)} has no unproved counterpart")
    # nothing the unproved LTS does is missing from the proved one
    proved = {
        plain.Move(t.forward, label_action(t.label), label_key(t.label).index, t.target)
        for t in steps(p, marking=m)
    }
    for mv in oracle:
        c.check(mv in proved, lambda: f"unproved move {mv.action}[{mv.key}] to {pretty(mv.target)} has no proof")


def check_rpi(c: Case) -> None:
    m = c.marking
    for t1, t2 in composable_pairs(c.process, m, "FF FB BF BB"):
        trace = Trace(t1.source, (t1, t2))
        rev = Trace(t2.target, (reverse(t2), reverse(t1)))
        c.check(
            concurrent_in_trace(trace, 1, 2) == concurrent_in_trace(rev, 1, 2),
            lambda: f"reversal changes the verdict for {_show(t1)} ; {_show(t2)}",
        )
        swapped = bool(exchanges(t1, t2, m))
        c.check(
            swapped == bool(exchanges(reverse(t2), reverse(t1), m)),
            lambda: f"reversal changes commutability of {_show(t1)} ; {_show(t2)}",
        )


SUITES: dict[str, Callable[[Case], None]] = {
    "loop": check_loop,
    "fwd-diamond": check_fwd_diamond,
    "side-diamond": check_side_diamond,
    "square": check_square,
    "bwd-conc": check_bwd_conc,
    "wellfounded": check_wellfounded,
    "consistency": check_consistency,
    "projection": check_projection,
    "rpi": check_rpi,
}

# The extended diamonds and the square are stated for replication without
# marked keys; every other suite targets the marked calculus.
UNMARKED_BY_DEFAULT = frozenset({"fwd-diamond", "side-diamond", "square"})


def default_marking(suite: str) -> bool:
    return suite not in UNMARKED_BY_DEFAULT


def make_case(seed: int, marking: bool, size: int = 8, walk: int = 6, depth: int = 4) -> Case:
    rng = random.Random(seed)
    p = random_walk(rng, random_standard(rng, size), walk, marking).target
    return Case(seed, p, marking, depth)


def run_suite(
    suite: str,
    seed: int = 0,
    count: int = 100,
    size: int = 8,
    walk: int = 6,
    depth: int = 4,
    marking: bool | None = None,
    stop_at_first: bool = False,
) -> SuiteResult:
    """Run ``suite`` on ``count`` random reachable processes.

    ``walk`` bounds the random walk that produces each process and
    ``depth`` the trace length explored by the consistency suite.
    """
    try:
        check = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}") from None
    if marking is None:
        marking = default_marking(suite)
    result = SuiteResult(suite, seed, count, marking)
    for i in range(count):
        case = make_case(seed + i, marking, size, walk, depth)
        check(case)
        result.checks += case.checks
        result.failures.extend(Failure(case.seed, case.process, d) for d in case.problems)
        if stop_at_first and result.failures:
            break
    return result
