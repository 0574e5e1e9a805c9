"""Process terms of CCSK with replication: representation, parsing, printing
and the structural helpers (keys, marking, prefix removal).

Concrete syntax, loosest binding first::

    proc     := sum ("|" sum)*
    sum      := bang ("+" bang)*
    bang     := "!" bang | prefixed
    prefixed := act ("[" nat "!"? "]")? ("." prefixed)? | atom
    atom     := ("0" | "(" proc ")") ("\\" name)*
    act      := name | "'" name

A prefix written without a continuation (``a.'b``) stands for ``a.'b.0``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field

TAU = "tau"


class ParseError(ValueError):
    """Raised on malformed process or label text."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}")


class KeyMisuse(ValueError):
    """A key index occurs more than twice, or twice on non-complementary actions."""


@dataclass(frozen=True, slots=True)
class Action:
    """A name ``a``, a co-name ``'a`` or the silent action ``tau``."""

    name: str
    co: bool = False

    @property
    def is_tau(self) -> bool:
        return self.name == TAU

    def complement(self) -> Action:
        if self.is_tau:
            raise ValueError("tau has no complement")
        return Action(self.name, not self.co)

    def __str__(self) -> str:
        return ("'" if self.co else "") + self.name


TAU_ACTION = Action(TAU)


@dataclass(frozen=True, slots=True, order=True)
class Key:
    index: int
    marked: bool = False

    def __str__(self) -> str:
        return f"{self.index}!" if self.marked else str(self.index)



def cached_hash(self) -> int:
    """Hash of a frozen node, computed once; terms are hashed very often."""
    h = self._h
    if not h:
        h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__match_args__)) or 1
        object.__setattr__(self, "_h", h)
    return h


# --------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Nil:
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class Prefix:
    action: Action
    cont: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class KeyedPrefix:
    action: Action
    key: Key
    cont: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class Sum:
    left: Process
    right: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class Par:
    left: Process
    right: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class Restrict:
    body: Process
    name: str
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


@dataclass(frozen=True, slots=True)
class Bang:
    body: Process
    _h: int = field(default=0, init=False, repr=False, compare=False)
    __hash__ = cached_hash


Process = Nil | Prefix | KeyedPrefix | Sum | Par | Restrict | Bang

NIL = Nil()


def iter_keyed(p: Process) -> Iterator[KeyedPrefix]:
    """Yield every keyed prefix of ``p`` in leftmost order."""
    stack = [p]
    while stack:
        q = stack.pop()
        if isinstance(q, KeyedPrefix):
            yield q
            stack.append(q.cont)
        elif isinstance(q, Prefix):
            stack.append(q.cont)
        elif isinstance(q, (Sum, Par)):
            stack.append(q.right)
            stack.append(q.left)
        elif isinstance(q, (Restrict, Bang)):
            stack.append(q.body)


def keys(p: Process) -> Counter:
    """Multiset of the keys occurring in ``p`` (marks preserved)."""
    return Counter(kp.key for kp in iter_keyed(p))


def key_indices(p: Process) -> frozenset[int]:
    return frozenset(kp.key.index for kp in iter_keyed(p))


def is_standard(p: Process) -> bool:
    return next(iter_keyed(p), None) is None


def size(p: Process) -> int:
    """Number of operators in ``p``; ``0`` counts for nothing."""
    if isinstance(p, Nil):
        return 0
    if isinstance(p, (Prefix, KeyedPrefix)):
        return 1 + size(p.cont)
    if isinstance(p, (Sum, Par)):
        return 1 + size(p.left) + size(p.right)
    return 1 + size(p.body)


def _map_keys(p: Process, f) -> Process:
    if isinstance(p, KeyedPrefix):
        return KeyedPrefix(p.action, f(p.key), _map_keys(p.cont, f))
    if isinstance(p, Prefix):
        return Prefix(p.action, _map_keys(p.cont, f))
    if isinstance(p, Sum):
        return Sum(_map_keys(p.left, f), _map_keys(p.right, f))
    if isinstance(p, Par):
        return Par(_map_keys(p.left, f), _map_keys(p.right, f))
    if isinstance(p, Restrict):
        return Restrict(_map_keys(p.body, f), p.name)
    if isinstance(p, Bang):
        return Bang(_map_keys(p.body, f))
    return p


def mark_all(p: Process) -> Process:
    """Mark every key of ``p``: ``a[m].P`` becomes ``a[m!].P``."""
    return _map_keys(p, lambda k: Key(k.index, True))


def unmark_all(p: Process) -> Process:
    return _map_keys(p, lambda k: Key(k.index, False))


def is_fully_marked(p: Process) -> bool:
    """True when ``p`` has at least one key and every key is marked."""
    ks = [kp.key for kp in iter_keyed(p)]
    return bool(ks) and all(k.marked for k in ks)


def remove_keyed(p: Process, action: Action, key: Key) -> Process:
    """Remove the first keyed prefix ``action[key]`` met in a leftmost traversal.

    Unkeyed prefixes are returned untouched, so nothing below a guard is
    inspected.
    """
    return _rem(p, action, key)[0]


def _rem(p: Process, action: Action, key: Key) -> tuple[Process, bool]:
    if isinstance(p, KeyedPrefix):
        if p.action == action and p.key == key:
            return p.cont, True
        cont, hit = _rem(p.cont, action, key)
        return (KeyedPrefix(p.action, p.key, cont), True) if hit else (p, False)
    if isinstance(p, (Sum, Par)):
        left, hit = _rem(p.left, action, key)
        if hit:
            return type(p)(left, p.right), True
        right, hit = _rem(p.right, action, key)
        return (type(p)(p.left, right), True) if hit else (p, False)
    if isinstance(p, Restrict):
        body, hit = _rem(p.body, action, key)
        return (Restrict(body, p.name), True) if hit else (p, False)
    # nil, guarded prefixes and replicated (standard) bodies
    return p, False


def remove_key_pair(p: Process, action: Action, key: Key) -> Process:
    """Remove both halves of a (possibly synchronised) keyed action."""
    if action.is_tau:
        return remove_keyed(p, action, key)
    return remove_keyed(remove_keyed(p, action.complement(), key), action, key)


def check_keys(p: Process) -> None:
    """Raise :class:`KeyMisuse` unless each key index occurs at most twice,
    and on complementary actions when it occurs twice."""
    seen: dict[int, list[Action]] = {}
    for kp in iter_keyed(p):
        seen.setdefault(kp.key.index, []).append(kp.action)
    for index, actions in seen.items():
        if len(actions) > 2:
            raise KeyMisuse(f"key {index} occurs {len(actions)} times")
        if len(actions) == 2:
            a, b = actions
            if a.is_tau or b.is_tau or a.complement() != b:
                raise KeyMisuse(f"key {index} is shared by non-complementary actions {a} and {b}")


def shape_problems(p: Process) -> list[str]:
    """Structural reasons why ``p`` cannot be reachable (empty if none found).

    Also flags replication nested under replication, which the marking
    discipline only handles at one level.
    """
    problems: list[str] = []
    try:
        check_keys(p)
    except KeyMisuse as exc:
        problems.append(str(exc))

    def walk(q: Process, under_bang: bool) -> None:
        if isinstance(q, Sum):
            if not is_standard(q.left) and not is_standard(q.right):
                problems.append(f"sum of two non-standard terms: {pretty(q)}")
            walk(q.left, under_bang)
            walk(q.right, under_bang)
        elif isinstance(q, Par):
            walk(q.left, under_bang)
            walk(q.right, under_bang)
        elif isinstance(q, Bang):
            if not is_standard(q.body):
                problems.append(f"replicated body is not standard: {pretty(q)}")
            if under_bang:
                problems.append(f"nested replication: {pretty(q)}")
            walk(q.body, True)
        elif isinstance(q, Prefix):
            if not is_standard(q.cont):
                problems.append(f"keys below an unkeyed prefix: {pretty(q)}")
            walk(q.cont, under_bang)
        elif isinstance(q, KeyedPrefix):
            walk(q.cont, under_bang)
        elif isinstance(q, Restrict):
            walk(q.body, under_bang)

    walk(p, False)
    return problems


def has_nested_bang(p: Process) -> bool:
    return any("nested replication" in msg for msg in shape_problems(p))


# --------------------------------------------------------------------------
# Printing

_PAR, _SUM, _BANG, _PREFIX, _ATOM = range(5)


def _level(p: Process) -> int:
    if isinstance(p, Par):
        return _PAR
    if isinstance(p, Sum):
        return _SUM
    if isinstance(p, Bang):
        return _BANG
    if isinstance(p, (Prefix, KeyedPrefix)):
        return _PREFIX
    return _ATOM


def _fmt(p: Process, need: int) -> str:
    if isinstance(p, Nil):
        s = "0"
    elif isinstance(p, Par):
        s = f"{_fmt(p.left, _PAR)} | {_fmt(p.right, _SUM)}"
    elif isinstance(p, Sum):
        s = f"{_fmt(p.left, _SUM)} + {_fmt(p.right, _BANG)}"
    elif isinstance(p, Bang):
        s = "!" + _fmt(p.body, _BANG)
    elif isinstance(p, Prefix):
        s = f"{p.action}.{_fmt(p.cont, _PREFIX)}"
    elif isinstance(p, KeyedPrefix):
        s = f"{p.action}[{p.key}].{_fmt(p.cont, _PREFIX)}"
    elif isinstance(p, Restrict):
        s = f"{_fmt(p.body, _ATOM)}\\{p.name}"
    else:
        raise TypeError(f"not a process: {p!r}")
    return f"({s})" if _level(p) < need else s


def pretty(p: Process) -> str:
    """Render ``p`` with the fewest parentheses that still parse back to ``p``."""
    return _fmt(p, _PAR)


# --------------------------------------------------------------------------
# Parsing

_PUNCT = set("()|+!.[]\\'<>,:")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split ``text`` into ``(kind, value, pos)`` triples.

    Kinds are ``name``, ``nat``, ``punct`` (also ``|L``/``|R`` path tags) and
    a final ``eof``.
    """
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "|" and i + 1 < n and text[i + 1] in "LR":
            tokens.append(("punct", text[i : i + 2], i))
            i += 2
        elif c in _PUNCT:
            tokens.append(("punct", c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("nat", text[i:j], i))
            i = j
        elif "a" <= c <= "z":
            j = i + 1
            while j < n and (text[j].islower() or text[j].isdigit() or text[j] in "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", text, i)
    tokens.append(("eof", "", n))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        kind, v, _ = self.tokens[self.i]
        return kind == "punct" and v == value

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.next()
        if kind != "punct" or v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", self.text, pos)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.peek()[2])


def parse_action(ts: TokenStream, allow_tau: bool = False) -> Action:
    co = False
    if ts.at("'"):
        ts.next()
        co = True
    kind, value, pos = ts.next()
    if kind != "name":
        raise ParseError("expected a name", ts.text, pos)
    if value == TAU and (co or not allow_tau):
        raise ParseError("tau is not allowed here", ts.text, pos)
    return Action(value, co)


def parse_key(ts: TokenStream) -> Key:
    kind, value, pos = ts.next()
    if kind != "nat":
        raise ParseError("expected a key (natural number)", ts.text, pos)
    marked = False
    if ts.at("!"):
        ts.next()
        marked = True
    return Key(int(value), marked)


class _ProcessParser:
    def __init__(self, ts: TokenStream):
        self.ts = ts

    def proc(self) -> Process:
        p = self.sum()
        while self.ts.at("|"):
            self.ts.next()
            p = Par(p, self.sum())
        return p

    def sum(self) -> Process:
        p = self.bang()
        while self.ts.at("+"):
            self.ts.next()
            p = Sum(p, self.bang())
        return p

    def bang(self) -> Process:
        if self.ts.at("!"):
            self.ts.next()
            return Bang(self.bang())
        return self.prefixed()

    def prefixed(self) -> Process:
        kind, _, _ = self.ts.peek()
        if kind == "name" or self.ts.at("'"):
            action = parse_action(self.ts)
            key = None
            if self.ts.at("["):
                self.ts.next()
                key = parse_key(self.ts)
                self.ts.expect("]")
            cont: Process = NIL
            if self.ts.at("."):
                self.ts.next()
                cont = self.prefixed()
            return Prefix(action, cont) if key is None else KeyedPrefix(action, key, cont)
        return self.atom()

    def atom(self) -> Process:
        kind, value, pos = self.ts.next()
        if kind == "nat" and value == "0":
            p: Process = NIL
        elif kind == "punct" and value == "(":
            p = self.proc()
            self.ts.expect(")")
        else:
            raise ParseError(f"unexpected {value or 'end of input'!r}", self.ts.text, pos)
        while self.ts.at("\\"):
            self.ts.next()
            kind, name, pos = self.ts.next()
            if kind != "name" or name == TAU:
                raise ParseError("expected a channel name after '\\'", self.ts.text, pos)
            p = Restrict(p, name)
        return p


def parse(text: str, check: bool = True) -> Process:
    """Parse a process; with ``check`` reject misused keys.

    >>> pretty(parse("a.'b | b+c"))
    "a.'b.0 | b.0 + c.0"
    """
    ts = TokenStream(text)
    p = _ProcessParser(ts).proc()
    kind, value, pos = ts.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", text, pos)
    if check:
        try:
            check_keys(p)
        except KeyMisuse as exc:
            raise ParseError(str(exc)) from exc
    return p


def parse_process_tokens(ts: TokenStream) -> Process:
    """Parse a process from an already opened token stream (used by label
    and trace readers)."""
    return _ProcessParser(ts).proc()
