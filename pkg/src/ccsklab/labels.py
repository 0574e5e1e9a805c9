"""Enhanced keyed labels: a path of ``|L``, ``|R`` and ``!`` tags above either a
keyed action or a synchronisation of two such labels."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .syntax import (
    TAU_ACTION,
    Action,
    Key,
    ParseError,
    TokenStream,
    cached_hash,
    parse_action,
    parse_key,
)

PAR_L = "|L"
PAR_R = "|R"
BANG = "!"
TAGS = (PAR_L, PAR_R, BANG)


@dataclass(frozen=True, slots=True)
class Act:
    action: Action
    key: Key
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash

    def __str__(self) -> str:
        return f"{self.action}[{self.key}]"


@dataclass(frozen=True, slots=True)
class Sync:
    left: Label
    right: Label
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash

    def __str__(self) -> str:
        return f"<{self.left}, {self.right}>"


@dataclass(frozen=True, slots=True)
class Label:
    path: tuple[str, ...]
    core: Act | Sync
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash

    def __str__(self) -> str:
        return " ".join(self.path + (str(self.core),))

    def under(self, tag: str) -> Label:
        """This label with ``tag`` prepended to its path."""
        return Label((tag,) + self.path, self.core)

    @property
    def head(self) -> str | None:
        return self.path[0] if self.path else None

    def tail(self) -> Label:
        return Label(self.path[1:], self.core)


def act(action: Action, key: Key, *path: str) -> Label:
    return Label(tuple(path), Act(action, key))


def sync(left: Label, right: Label, *path: str) -> Label:
    return Label(tuple(path), Sync(left, right))


def label_action(theta: Label) -> Action:
    """The visible action of a label: the keyed action, or ``tau`` for a sync."""
    if isinstance(theta.core, Sync):
        return TAU_ACTION
    return theta.core.action


def label_key(theta: Label) -> Key:
    core = theta.core
    while isinstance(core, Sync):
        core = core.left.core
    return core.key


@lru_cache(maxsize=200_000)
def collapse(theta: Label) -> Label:
    """Identify replication tags with right-parallel tags, recursively."""
    path = tuple(PAR_R if tag == BANG else tag for tag in theta.path)
    core = theta.core
    if isinstance(core, Sync):
        core = Sync(collapse(core.left), collapse(core.right))
    return Label(path, core)


def has_bang(theta: Label) -> bool:
    if BANG in theta.path:
        return True
    core = theta.core
    return isinstance(core, Sync) and (has_bang(core.left) or has_bang(core.right))


def is_well_formed(theta: Label) -> bool:
    """Sync sides start with ``|L``/``|R`` and carry complementary actions
    under one key."""
    core = theta.core
    if isinstance(core, Act):
        return True
    left, right = core.left, core.right
    if left.head != PAR_L or right.head != PAR_R:
        return False
    if not (isinstance(left.core, Act) and isinstance(right.core, Act)):
        return False
    la, ra = left.core.action, right.core.action
    return (
        not la.is_tau
        and la.complement() == ra
        and left.core.key.index == right.core.key.index
    )


# --------------------------------------------------------------------------
# Text syntax:  |L ! <|L a[3], |R 'a[3]>


def _label(ts: TokenStream, key_names: dict[str, int] | None) -> Label:
    path = []
    while True:
        kind, value, _ = ts.peek()
        if kind == "punct" and value in TAGS:
            ts.next()
            path.append(value)
        else:
            break
    if ts.at("<"):
        ts.next()
        left = _label(ts, key_names)
        ts.expect(",")
        right = _label(ts, key_names)
        ts.expect(">")
        return Label(tuple(path), Sync(left, right))
    action = parse_action(ts, allow_tau=True)
    ts.expect("[")
    kind, value, pos = ts.peek()
    if kind == "name":
        ts.next()
        name = value
        while ts.at("'"):  # n', n''
            ts.next()
            name += "'"
        if key_names is None or name not in key_names:
            raise ParseError(f"unbound key name {name!r}", ts.text, pos)
        key = Key(key_names[name])
        if ts.at("!"):
            ts.next()
            key = Key(key.index, True)
    else:
        key = parse_key(ts)
    ts.expect("]")
    return Label(tuple(path), Act(action, key))


def parse_label(text: str, key_names: dict[str, int] | None = None) -> Label:
    """Parse the textual label syntax.

    ``key_names`` lets keys be written symbolically (``a[m]``) and resolved to
    naturals.
    """
    ts = TokenStream(text)
    theta = _label(ts, key_names)
    kind, value, pos = ts.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", text, pos)
    return theta


def label_from_tokens(ts: TokenStream, key_names: dict[str, int] | None = None) -> Label:
    return _label(ts, key_names)


# --------------------------------------------------------------------------
# JSON


def label_to_json(theta: Label) -> dict:
    core = theta.core
    if isinstance(core, Act):
        body = {
            "kind": "act",
            "action": str(core.action),
            "key": {"index": core.key.index, "marked": core.key.marked},
        }
    else:
        body = {"kind": "sync", "left": label_to_json(core.left), "right": label_to_json(core.right)}
    return {"path": list(theta.path), "core": body}


def label_from_json(obj: dict) -> Label:
    path = tuple(obj["path"])
    if any(tag not in TAGS for tag in path):
        raise ValueError(f"bad path {path!r}")
    core = obj["core"]
    if core["kind"] == "act":
        text = core["action"]
        action = Action(text[1:], True) if text.startswith("'") else Action(text)
        key = Key(int(core["key"]["index"]), bool(core["key"].get("marked", False)))
        return Label(path, Act(action, key))
    if core["kind"] == "sync":
        return Label(path, Sync(label_from_json(core["left"]), label_from_json(core["right"])))
    raise ValueError(f"unknown label kind {core['kind']!r}")
