"""Dependency between enhanced labels, and causality/concurrency in traces."""

from __future__ import annotations

from functools import lru_cache

from .labels import BANG, PAR_L, PAR_R, Act, Label, Sync
from .lts import Trace, TraceError, Transition, reverse
from .syntax import Process

Witness = tuple[tuple[str, str, str], ...]


def _side(theta: Label, d: str) -> Label:
    return theta.core.left if d == PAR_L else theta.core.right


def _is_bare_sync(theta: Label) -> bool:
    return not theta.path and isinstance(theta.core, Sync)


@lru_cache(maxsize=100_000)
def dependency_witness(t1: Label, t2: Label) -> Witness | None:
    """A derivation of ``t1 ⋖ t2`` as ``(rule, lhs, rhs)`` steps, or None.

    The axioms are syntax directed, so the first applicable rule whose
    premise holds gives the derivation.
    """
    here = lambda rule: (rule, str(t1), str(t2))
    h1, h2 = t1.head, t2.head

    if not t1.path and isinstance(t1.core, Act):
        return (here("prefix"),)
    if h1 in (PAR_L, PAR_R) and h1 == h2:
        sub = dependency_witness(t1.tail(), t2.tail())
        if sub is not None:
            return (here("par"),) + sub
    if h1 == BANG:
        inner = t1.tail()
        if h2 == BANG:
            return (here("bang-bang"),)
        if h2 == PAR_L:
            return (here("bang-left"),)
        if h2 == PAR_R:
            if _is_bare_sync(inner) and t2.tail().head in (PAR_L, PAR_R):
                return (here("bang-right-sync"),)
            sub = dependency_witness(inner, t2.tail())
            if sub is not None:
                return (here("bang-right"),) + sub
    if _is_bare_sync(t1):
        for d in (PAR_L, PAR_R):
            sub = dependency_witness(_side(t1, d), t2)
            if sub is not None:
                return (here(f"sync-{d}-causes"),) + sub
    if _is_bare_sync(t2):
        for d in (PAR_L, PAR_R):
            sub = dependency_witness(t1, _side(t2, d))
            if sub is not None:
                return (here(f"caused-by-sync-{d}"),) + sub
        if _is_bare_sync(t1):
            for d in (PAR_L, PAR_R):
                sub = dependency_witness(_side(t1, d), _side(t2, d))
                if sub is not None:
                    return (here(f"sync-sync-{d}"),) + sub
    return None


def depends(t1: Label, t2: Label) -> bool:
    """``t1 ⋖ t2``: whenever ``t1`` occurs before ``t2`` in a trace, they are
    causally related."""
    return dependency_witness(t1, t2) is not None


def _check(trace: Trace, i: int) -> Label:
    if not 1 <= i <= len(trace):
        raise IndexError(f"step {i} is outside a trace of length {len(trace)}")
    return trace[i - 1].label


def causes_in_trace(trace: Trace, i: int, j: int) -> bool:
    """Step ``i`` causes step ``j`` (1-based, ``i < j``)."""
    ti, tj = _check(trace, i), _check(trace, j)
    if i >= j:
        raise ValueError(f"causality needs i < j, got {i} and {j}")
    return depends(ti, tj)


def concurrency_witness(trace: Trace, i: int, j: int) -> Witness | None:
    """Why steps ``i`` and ``j`` are not concurrent, or None when they are.

    The check looks for a dependency in either order; a step is never
    concurrent with itself.
    """
    ti, tj = _check(trace, i), _check(trace, j)
    if i == j:
        return (("same-step", str(ti), str(tj)),)
    return dependency_witness(ti, tj) or dependency_witness(tj, ti)


def concurrent_in_trace(trace: Trace, i: int, j: int) -> bool:
    return concurrency_witness(trace, i, j) is None


def labels_concurrent(t1: Label, t2: Label) -> bool:
    return not depends(t1, t2) and not depends(t2, t1)


def coinitial_concurrent(t1: Transition, t2: Transition) -> bool:
    """Concurrency of two transitions leaving the same process, judged on the
    composable trace ``reverse(t1); t2``."""
    if t1.source != t2.source:
        raise ValueError("transitions are not coinitial")
    trace = Trace(t1.target, (reverse(t1), t2))
    return concurrent_in_trace(trace, 1, 2)


# --------------------------------------------------------------------------
# Projections onto one side of a parallel composition


class UndefinedProjection(ValueError):
    pass


def project_label(d: str, theta: Label) -> Label:
    if theta.head == d:
        return theta.tail()
    if _is_bare_sync(theta):
        return _side(theta, d).tail()
    raise UndefinedProjection(f"projection {d} of {theta} is undefined")


def project_process(d: str, p: Process) -> Process:
    from .syntax import Par

    if not isinstance(p, Par):
        raise UndefinedProjection("projection needs a parallel composition")
    return p.left if d == PAR_L else p.right


def project(d: str, trace: Trace) -> Trace:
    """The trace performed by the ``d`` component (``"|L"``/``"left"`` or
    ``"|R"``/``"right"``) of a trace of parallel compositions."""
    d = {"left": PAR_L, "right": PAR_R}.get(d, d)
    if d not in (PAR_L, PAR_R):
        raise ValueError(f"unknown side {d!r}")
    steps = tuple(
        Transition(
            project_process(d, t.source),
            t.direction,
            project_label(d, t.label),
            project_process(d, t.target),
        )
        for t in trace
    )
    try:
        return Trace(project_process(d, trace.source), steps)
    except TraceError as exc:  # pragma: no cover - composability is inherited
        raise UndefinedProjection(str(exc)) from exc
