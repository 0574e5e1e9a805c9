"""Random processes and random walks for the property suites."""

from __future__ import annotations

import random

from .lts import Trace, steps
from .syntax import (
    NIL,
    Action,
    Bang,
    Key,
    KeyedPrefix,
    Par,
    Prefix,
    Process,
    Restrict,
    Sum,
)

NAMES = ("a", "b", "c")


def random_action(rng: random.Random, names=NAMES) -> Action:
    return Action(rng.choice(names), rng.random() < 0.5)


def random_standard(rng: random.Random, size: int = 8, names=NAMES, bang: bool = True) -> Process:
    """A standard process with at most ``size`` operators, without nested
    replication and without ``tau`` prefixes."""
    if size <= 0:
        return NIL
    roll = rng.random()
    if size >= 3 and roll < 0.3:
        n = rng.randint(1, size - 2)
        return Par(random_standard(rng, n, names, bang), random_standard(rng, size - 1 - n, names, bang))
    if size >= 3 and roll < 0.45:
        n = rng.randint(1, size - 2)
        return Sum(random_standard(rng, n, names, bang), random_standard(rng, size - 1 - n, names, bang))
    if bang and size >= 2 and roll < 0.6:
        return Bang(random_standard(rng, size - 1, names, False))
    if size >= 2 and roll < 0.65:
        return Restrict(random_standard(rng, size - 1, names, bang), rng.choice(names))
    return Prefix(random_action(rng, names), random_standard(rng, rng.randint(0, size - 1), names, bang))


def random_walk(
    rng: random.Random, p: Process, depth: int = 6, marking: bool = True
) -> Trace:
    """A trace of at most ``depth`` uniformly chosen forward/backward steps."""
    trace = Trace(p)
    for _ in range(rng.randint(0, depth)):
        options = steps(trace.target, marking=marking)
        if not options:
            break
        trace = trace.then(rng.choice(options))
    return trace


def random_reachable(
    rng: random.Random, size: int = 8, depth: int = 6, marking: bool = True
) -> Process:
    return random_walk(rng, random_standard(rng, size), depth, marking).target


def random_term(rng: random.Random, size: int = 8, names=NAMES) -> Process:
    """An arbitrary term, keyed and marked prefixes included; only used to
    exercise the parser and printer."""
    if size <= 0:
        return NIL
    roll = rng.random()
    if size >= 3 and roll < 0.25:
        n = rng.randint(1, size - 2)
        return Par(random_term(rng, n, names), random_term(rng, size - 1 - n, names))
    if size >= 3 and roll < 0.45:
        n = rng.randint(1, size - 2)
        return Sum(random_term(rng, n, names), random_term(rng, size - 1 - n, names))
    if size >= 2 and roll < 0.55:
        return Bang(random_term(rng, size - 1, names))
    if size >= 2 and roll < 0.65:
        return Restrict(random_term(rng, size - 1, names), rng.choice(names))
    cont = random_term(rng, rng.randint(0, size - 1), names)
    if rng.random() < 0.4:
        return KeyedPrefix(random_action(rng, names), Key(rng.randint(0, 20), rng.random() < 0.3), cont)
    return Prefix(random_action(rng, names), cont)
