"""Reading and writing traces.

Text format: blank lines and ``#`` comments are ignored, the first line is the
source process and every further line is one step::

    a.'b.0 | b.0 + c.0
    forward |L a[0] :: a[0].'b.0 | b.0 + c.0
    backward |L a[0] :: a.'b.0 | b.0 + c.0
"""

from __future__ import annotations

import json

from .labels import label_from_json, label_key, label_to_json, parse_label
from .lts import (
    BACKWARD,
    FORWARD,
    Direction,
    Trace,
    TraceError,
    Transition,
    is_derivable,
    steps_with_label,
)
from .syntax import ParseError, Process, parse, pretty

_DIRECTIONS = {"forward": FORWARD, "fwd": FORWARD, "backward": BACKWARD, "bwd": BACKWARD}


class TraceFileError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def format_step(t: Transition) -> str:
    return f"{t.direction.value} {t.label} :: {pretty(t.target)}"


def dumps(trace: Trace) -> str:
    lines = [pretty(trace.source)]
    lines.extend(format_step(t) for t in trace)
    return "\n".join(lines) + "\n"


def loads(text: str, marking: bool = True, check: bool = True) -> Trace:
    """Parse a trace; with ``check`` every step must be derivable."""
    source: Process | None = None
    here: Process | None = None
    steps: list[Transition] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if source is None:
                source = here = parse(line)
                continue
            head, _, rest = line.partition(" ")
            if head not in _DIRECTIONS:
                raise TraceFileError(f"expected forward/backward, got {head!r}", lineno)
            label_text, sep, target_text = rest.partition("::")
            if not sep:
                raise TraceFileError("missing '::' before the target process", lineno)
            t = Transition(here, _DIRECTIONS[head], parse_label(label_text.strip()), parse(target_text.strip()))
        except ParseError as exc:
            raise TraceFileError(str(exc), lineno) from exc
        if check and not is_derivable(t, marking):
            raise TraceFileError(f"step is not derivable: {t}", lineno)
        steps.append(t)
        here = t.target
    if source is None:
        raise TraceFileError("empty trace file: the source process is missing")
    try:
        return Trace(source, tuple(steps))
    except TraceError as exc:  # pragma: no cover - steps are chained above
        raise TraceFileError(str(exc)) from exc


def load(path: str, marking: bool = True, check: bool = True) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), marking, check)


def dump(trace: Trace, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(trace))


# --------------------------------------------------------------------------
# JSON


def transition_to_json(t: Transition) -> dict:
    return {
        "source": pretty(t.source),
        "direction": t.direction.value,
        "label": label_to_json(t.label),
        "target": pretty(t.target),
    }


def transition_from_json(obj: dict) -> Transition:
    return Transition(
        parse(obj["source"]),
        Direction(obj["direction"]),
        label_from_json(obj["label"]),
        parse(obj["target"]),
    )


def trace_to_json(trace: Trace) -> dict:
    return {"source": pretty(trace.source), "steps": [transition_to_json(t) for t in trace]}


def trace_from_json(obj: dict) -> Trace:
    return Trace(parse(obj["source"]), tuple(transition_from_json(s) for s in obj["steps"]))


def json_dumps(trace: Trace) -> str:
    return json.dumps(trace_to_json(trace), indent=2)


# --------------------------------------------------------------------------
# Building traces from label selectors


class SelectorError(ValueError):
    pass


def select(p: Process, selector: str, key_names: dict[str, int] | None = None, marking: bool = True) -> Transition:
    """The unique step of ``p`` described by ``"fwd <label>"`` or
    ``"bwd <label>"``; forward steps use the key written in the label."""
    head, _, rest = selector.strip().partition(" ")
    if head not in _DIRECTIONS:
        raise SelectorError(f"selector {selector!r} must start with fwd/bwd")
    direction = _DIRECTIONS[head]
    try:
        theta = parse_label(rest.strip(), key_names)
    except ParseError as exc:
        raise SelectorError(f"bad label in {selector!r}: {exc}") from exc
    found = [t for t in steps_with_label(p, direction, label_key(theta), marking) if t.label == theta]
    if len(found) != 1:
        what = "no step" if not found else f"{len(found)} steps"
        raise SelectorError(f"{what} of {pretty(p)} match {selector!r}")
    return found[0]


def walk(
    source: Process, selectors, key_names: dict[str, int] | None = None, marking: bool = True
) -> Trace:
    trace = Trace(source)
    for sel in selectors:
        trace = trace.then(select(trace.target, sel, key_names, marking))
    return trace


def parse_key_names(text: str) -> dict[str, int]:
    """``"m=0,n=1,n'=2"`` to a name-to-index map."""
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not value.strip().isdigit():
            raise ValueError(f"bad key binding {item!r}; expected name=number")
        out[name.strip()] = int(value)
    return out
