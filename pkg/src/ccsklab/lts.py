"""Proved forward/backward transitions of CCSK with replication.

``marking=True`` (the default) selects the calculus where copies spawned by
replication carry marked keys: a marked keyed prefix can only be undone by
un-spawning the whole copy.  ``marking=False`` gives the plain replication
rules, where spawned copies keep ordinary keys and can backtrack on their
own.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count

from .labels import BANG, PAR_L, PAR_R, Act, Label, Sync, label_action, label_key
from .syntax import (
    Bang,
    Key,
    KeyedPrefix,
    Nil,
    Par,
    Prefix,
    Process,
    Restrict,
    Sum,
    cached_hash,
    is_fully_marked,
    is_standard,
    key_indices,
    mark_all,
    pretty,
    unmark_all,
)


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    def opposite(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD

    @property
    def arrow(self) -> str:
        return "->" if self is Direction.FORWARD else "~>"


FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD


@dataclass(frozen=True, slots=True)
class Transition:
    source: Process
    direction: Direction
    label: Label
    target: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash

    def __str__(self) -> str:
        return f"{pretty(self.source)} {self.direction.arrow}[{self.label}] {pretty(self.target)}"

    @property
    def forward(self) -> bool:
        return self.direction is FORWARD


class TraceError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Trace:
    """A sequence of composable transitions starting at ``source``."""

    source: Process
    steps: tuple[Transition, ...] = ()

    def __post_init__(self):
        here = self.source
        for i, t in enumerate(self.steps, 1):
            if t.source != here:
                raise TraceError(f"step {i} does not start where step {i - 1} ends")
            here = t.target

    @classmethod
    def of(cls, steps) -> Trace:
        steps = tuple(steps)
        if not steps:
            raise TraceError("an empty trace needs an explicit source")
        return cls(steps[0].source, steps)

    @property
    def target(self) -> Process:
        return self.steps[-1].target if self.steps else self.source

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(t.label for t in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def then(self, t: Transition) -> Trace:
        return Trace(self.source, self.steps + (t,))


def reverse(t: Transition) -> Transition:
    """The opposite-direction transition with the same label."""
    return Transition(t.target, t.direction.opposite(), t.label, t.source)


def reverse_trace(trace: Trace) -> Trace:
    return Trace(trace.target, tuple(reverse(t) for t in reversed(trace.steps)))


def fresh_key(p: Process) -> Key:
    used = key_indices(p)
    return Key(next(i for i in count() if i not in used))


# --------------------------------------------------------------------------
# Forward rules


@lru_cache(maxsize=200_000)
def _fwd(p: Process, k: int, marking: bool) -> tuple[tuple[Label, Process], ...]:
    """All ``(label, target)`` forward moves of ``p`` using key index ``k``.

    Side conditions are checked literally; ``k`` being fresh for the whole
    term makes most of them hold trivially.
    """
    out: list[tuple[Label, Process]] = []
    if isinstance(p, Prefix):
        if is_standard(p.cont):
            out.append((Label((), Act(p.action, Key(k))), KeyedPrefix(p.action, Key(k), p.cont)))
    elif isinstance(p, KeyedPrefix):
        if p.key.index != k:
            for theta, q in _fwd(p.cont, k, marking):
                out.append((theta, KeyedPrefix(p.action, p.key, q)))
    elif isinstance(p, Restrict):
        for theta, q in _fwd(p.body, k, marking):
            if label_action(theta).name != p.name:
                out.append((theta, Restrict(q, p.name)))
    elif isinstance(p, Par):
        left = _fwd(p.left, k, marking)
        right = _fwd(p.right, k, marking)
        if k not in key_indices(p.right):
            for theta, q in left:
                out.append((theta.under(PAR_L), Par(q, p.right)))
        for tl, ql in left:
            al = label_action(tl)
            if al.is_tau:
                continue
            for tr, qr in right:
                if label_action(tr) == al.complement():
                    out.append((Label((), Sync(tl.under(PAR_L), tr.under(PAR_R))), Par(ql, qr)))
        if k not in key_indices(p.left):
            for theta, q in right:
                out.append((theta.under(PAR_R), Par(p.left, q)))
    elif isinstance(p, Sum):
        if is_standard(p.right):
            for theta, q in _fwd(p.left, k, marking):
                out.append((theta, Sum(q, p.right)))
        if is_standard(p.left):
            for theta, q in _fwd(p.right, k, marking):
                out.append((theta, Sum(p.left, q)))
    elif isinstance(p, Bang):
        spawn = mark_all if marking else (lambda q: q)
        moves = _fwd(p.body, k, marking)
        for theta, q in moves:
            out.append((theta.under(BANG), Par(p, spawn(q))))
        for tl, ql in moves:
            al = label_action(tl)
            if al.is_tau:
                continue
            for tr, qr in moves:
                if label_action(tr) == al.complement():
                    theta = Label((BANG,), Sync(tl.under(PAR_L), tr.under(PAR_R)))
                    out.append((theta, Par(p, spawn(Par(ql, qr)))))
    return tuple(out)


def forward_steps(p: Process, key: Key | int | None = None, marking: bool = True) -> list[Transition]:
    """Every forward transition of ``p``.

    The new key is the smallest index not used in ``p`` unless ``key`` is
    given; a key already present in ``p`` yields no transitions.
    """
    k = fresh_key(p).index if key is None else (key.index if isinstance(key, Key) else int(key))
    return [Transition(p, FORWARD, theta, q) for theta, q in _fwd(p, k, marking)]


# --------------------------------------------------------------------------
# Backward rules


@lru_cache(maxsize=200_000)
def _bwd(p: Process, marking: bool) -> tuple[tuple[Label, Process], ...]:
    out: list[tuple[Label, Process]] = []
    if isinstance(p, KeyedPrefix):
        if is_standard(p.cont):
            if not (marking and p.key.marked):
                out.append((Label((), Act(p.action, Key(p.key.index))), Prefix(p.action, p.cont)))
        else:
            for theta, q in _bwd(p.cont, marking):
                if label_key(theta).index != p.key.index:
                    out.append((theta, KeyedPrefix(p.action, p.key, q)))
    elif isinstance(p, Restrict):
        for theta, q in _bwd(p.body, marking):
            if label_action(theta).name != p.name:
                out.append((theta, Restrict(q, p.name)))
    elif isinstance(p, Par):
        left = _bwd(p.left, marking)
        right = _bwd(p.right, marking)
        right_keys = key_indices(p.right)
        left_keys = key_indices(p.left)
        for theta, q in left:
            if label_key(theta).index not in right_keys:
                out.append((theta.under(PAR_L), Par(q, p.right)))
        for tl, ql in left:
            al = label_action(tl)
            if al.is_tau:
                continue
            for tr, qr in right:
                if label_key(tr).index == label_key(tl).index and label_action(tr) == al.complement():
                    out.append((Label((), Sync(tl.under(PAR_L), tr.under(PAR_R))), Par(ql, qr)))
        for theta, q in right:
            if label_key(theta).index not in left_keys:
                out.append((theta.under(PAR_R), Par(p.left, q)))
        if isinstance(p.left, Bang):
            out.extend(_unspawn(p.left, p.right, marking))
    elif isinstance(p, Sum):
        if is_standard(p.right):
            for theta, q in _bwd(p.left, marking):
                out.append((theta, Sum(q, p.right)))
        if is_standard(p.left):
            for theta, q in _bwd(p.right, marking):
                out.append((theta, Sum(p.left, q)))
    return tuple(out)


def _spawned(copy: Process, marking: bool) -> Process | None:
    """Undo the marking of a spawned copy, or None if ``copy`` cannot be one."""
    if not marking:
        return copy
    return unmark_all(copy) if is_fully_marked(copy) else None


def _unspawn(bang: Bang, copy: Process, marking: bool) -> list[tuple[Label, Process]]:
    """Reverse replication: ``!X | Y`` goes back to ``!X`` when ``Y`` is one
    step away from a fresh copy of ``X``."""
    body = bang.body
    if not is_standard(body):
        return []
    out = []
    plain = _spawned(copy, marking)
    if plain is not None:
        for theta, q in _bwd(plain, marking):
            if q == body:
                out.append((theta.under(BANG), bang))
    if isinstance(copy, Par):
        left, right = _spawned(copy.left, marking), _spawned(copy.right, marking)
        if left is not None and right is not None:
            for tl, ql in _bwd(left, marking):
                al = label_action(tl)
                if ql != body or al.is_tau:
                    continue
                for tr, qr in _bwd(right, marking):
                    if (
                        qr == body
                        and label_key(tr).index == label_key(tl).index
                        and label_action(tr) == al.complement()
                    ):
                        out.append((Label((BANG,), Sync(tl.under(PAR_L), tr.under(PAR_R))), bang))
    return out


def backward_steps(p: Process, marking: bool = True) -> list[Transition]:
    """Every admissible backward transition of ``p``."""
    return [Transition(p, BACKWARD, theta, q) for theta, q in _bwd(p, marking)]


def steps(p: Process, direction: Direction | None = None, marking: bool = True) -> list[Transition]:
    """Forward (canonical fresh key) and/or backward transitions of ``p``."""
    out: list[Transition] = []
    if direction in (None, FORWARD):
        out.extend(forward_steps(p, marking=marking))
    if direction in (None, BACKWARD):
        out.extend(backward_steps(p, marking=marking))
    return out


def steps_with_label(
    p: Process, direction: Direction, key: Key | int, marking: bool = True
) -> list[Transition]:
    """Transitions of ``p`` in ``direction`` whose label carries key ``key``."""
    index = key.index if isinstance(key, Key) else int(key)
    if direction is FORWARD:
        return forward_steps(p, index, marking)
    return [t for t in backward_steps(p, marking) if label_key(t.label).index == index]


def is_derivable(t: Transition, marking: bool = True) -> bool:
    return t in steps_with_label(t.source, t.direction, label_key(t.label), marking)


def clear_caches() -> None:
    _fwd.cache_clear()
    _bwd.cache_clear()


# --------------------------------------------------------------------------
# Origins


class NonConfluentOrigin(Exception):
    """Two maximal backward paths end in different standard processes."""

    def __init__(self, origins: list[Process]):
        self.origins = origins
        super().__init__("backtracking is not confluent: " + " vs ".join(pretty(o) for o in origins))


class NoOrigin(Exception):
    """Backtracking gets stuck before reaching a standard process."""

    def __init__(self, stuck: Process):
        self.stuck = stuck
        super().__init__(f"no admissible backward step from {pretty(stuck)}")


def origins(p: Process, marking: bool = True) -> tuple[set[Process], set[Process]]:
    """Standard processes and stuck non-standard processes reachable from ``p``
    by maximal backward paths."""
    found: set[Process] = set()
    stuck: set[Process] = set()
    seen = {p}
    todo = [p]
    while todo:
        q = todo.pop()
        if is_standard(q):
            found.add(q)
            continue
        succ = backward_steps(q, marking)
        if not succ:
            stuck.add(q)
        for t in succ:
            if t.target not in seen:
                seen.add(t.target)
                todo.append(t.target)
    return found, stuck


def origin(p: Process, marking: bool = True) -> Process:
    """The standard process ``p`` was reached from, undoing every key."""
    found, stuck = origins(p, marking)
    if len(found) > 1:
        raise NonConfluentOrigin(sorted(found, key=pretty))
    if not found:
        raise NoOrigin(min(stuck, key=pretty))
    return next(iter(found))


# --------------------------------------------------------------------------
# Sub-term focusing


def focus(t: Transition) -> tuple[Process, Transition]:
    """Strip restrictions, sums and keyed prefixes that merely propagate the
    label of ``t`` and return the sub-process whose top connector produces it,
    with the corresponding sub-transition.

    For a backward ``!``-label the connector found is the ``!X | Y`` pair that
    reverse replication acts on.
    """
    src, tgt = t.source, t.target
    theta = t.label
    while True:
        if isinstance(src, Restrict) and isinstance(tgt, Restrict):
            src, tgt = src.body, tgt.body
        elif isinstance(src, Sum) and isinstance(tgt, Sum):
            if src.left != tgt.left:
                src, tgt = src.left, tgt.left
            else:
                src, tgt = src.right, tgt.right
        elif (
            isinstance(src, KeyedPrefix)
            and isinstance(tgt, KeyedPrefix)
            and src.key == tgt.key
            and src.cont != tgt.cont
        ):
            src, tgt = src.cont, tgt.cont
        else:
            break
    sub = Transition(src, t.direction, theta, tgt)
    return src, sub


def primary_connector(p: Process) -> str:
    return {
        Nil: "nil",
        Prefix: "prefix",
        KeyedPrefix: "prefix",
        Sum: "sum",
        Par: "parallel",
        Restrict: "restriction",
        Bang: "replication",
    }[type(p)]
