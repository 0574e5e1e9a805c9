"""The unproved keyed LTS: transitions carry only an action and a key.

Written independently of :mod:`ccsklab.lts` so that erasing the paths of
proved labels can be checked against it.
"""

from __future__ import annotations

from typing import NamedTuple

from .syntax import (
    TAU_ACTION,
    Action,
    Bang,
    Key,
    KeyedPrefix,
    Par,
    Prefix,
    Process,
    Restrict,
    Sum,
    iter_keyed,
    mark_all,
    unmark_all,
)


class Move(NamedTuple):
    forward: bool
    action: Action
    key: int
    target: Process


def _std(p: Process) -> bool:
    return not any(True for _ in iter_keyed(p))


def _has_key(p: Process, k: int) -> bool:
    return any(kp.key.index == k for kp in iter_keyed(p))


def forward(p: Process, k: int, marking: bool = True) -> set[tuple[Action, Process]]:
    """``(action, target)`` pairs for forward moves of ``p`` with key ``k``."""
    match p:
        case Prefix(a, cont) if _std(cont):
            return {(a, KeyedPrefix(a, Key(k), cont))}
        case KeyedPrefix(a, key, cont) if key.index != k:
            return {(b, KeyedPrefix(a, key, q)) for b, q in forward(cont, k, marking)}
        case Restrict(body, name):
            return {(b, Restrict(q, name)) for b, q in forward(body, k, marking) if b.name != name}
        case Sum(l, r):
            out = set()
            if _std(r):
                out |= {(b, Sum(q, r)) for b, q in forward(l, k, marking)}
            if _std(l):
                out |= {(b, Sum(l, q)) for b, q in forward(r, k, marking)}
            return out
        case Par(l, r):
            ml, mr = forward(l, k, marking), forward(r, k, marking)
            out = set()
            if not _has_key(r, k):
                out |= {(b, Par(q, r)) for b, q in ml}
            if not _has_key(l, k):
                out |= {(b, Par(l, q)) for b, q in mr}
            out |= {
                (TAU_ACTION, Par(ql, qr))
                for bl, ql in ml
                for br, qr in mr
                if not bl.is_tau and br == bl.complement()
            }
            return out
        case Bang(body):
            wrap = mark_all if marking else (lambda q: q)
            m = forward(body, k, marking)
            out = {(b, Par(p, wrap(q))) for b, q in m}
            out |= {
                (TAU_ACTION, Par(p, wrap(Par(q1, q2))))
                for b1, q1 in m
                for b2, q2 in m
                if not b1.is_tau and b2 == b1.complement()
            }
            return out
    return set()


def backward(p: Process, marking: bool = True) -> set[tuple[Action, int, Process]]:
    """``(action, key, target)`` triples for admissible backward moves."""
    match p:
        case KeyedPrefix(a, key, cont) if _std(cont):
            if marking and key.marked:
                return set()
            return {(a, key.index, Prefix(a, cont))}
        case KeyedPrefix(a, key, cont):
            return {(b, j, KeyedPrefix(a, key, q)) for b, j, q in backward(cont, marking) if j != key.index}
        case Restrict(body, name):
            return {(b, j, Restrict(q, name)) for b, j, q in backward(body, marking) if b.name != name}
        case Sum(l, r):
            out = set()
            if _std(r):
                out |= {(b, j, Sum(q, r)) for b, j, q in backward(l, marking)}
            if _std(l):
                out |= {(b, j, Sum(l, q)) for b, j, q in backward(r, marking)}
            return out
        case Par(l, r):
            ml, mr = backward(l, marking), backward(r, marking)
            out = {(b, j, Par(q, r)) for b, j, q in ml if not _has_key(r, j)}
            out |= {(b, j, Par(l, q)) for b, j, q in mr if not _has_key(l, j)}
            out |= {
                (TAU_ACTION, j1, Par(ql, qr))
                for b1, j1, ql in ml
                for b2, j2, qr in mr
                if j1 == j2 and not b1.is_tau and b2 == b1.complement()
            }
            if isinstance(l, Bang) and _std(l.body):
                out |= _unspawn(l, r, marking)
            return out
    return set()


def _copy(y: Process, marking: bool) -> Process | None:
    if not marking:
        return y
    ks = [kp.key for kp in iter_keyed(y)]
    if ks and all(k.marked for k in ks):
        return unmark_all(y)
    return None


def _unspawn(bang: Bang, y: Process, marking: bool) -> set[tuple[Action, int, Process]]:
    x = bang.body
    out = set()
    c = _copy(y, marking)
    if c is not None:
        out |= {(b, j, bang) for b, j, q in backward(c, marking) if q == x}
    if isinstance(y, Par):
        cl, cr = _copy(y.left, marking), _copy(y.right, marking)
        if cl is not None and cr is not None:
            for b1, j1, q1 in backward(cl, marking):
                if q1 != x or b1.is_tau:
                    continue
                for b2, j2, q2 in backward(cr, marking):
                    if q2 == x and j2 == j1 and b2 == b1.complement():
                        out.add((TAU_ACTION, j1, bang))
    return out


def moves(p: Process, k: int, marking: bool = True) -> set[Move]:
    """Forward moves with key ``k`` and all backward moves of ``p``."""
    out = {Move(True, a, k, q) for a, q in forward(p, k, marking)}
    out |= {Move(False, a, j, q) for a, j, q in backward(p, marking)}
    return out
