"""Text formats: value literals, universe files and script files.

Value literals::

    a            atom
    true false   booleans
    [a, b]       pair
    {a b c}      finite set (commas optional)
    {i1: a, i2: b}   graph
    {:}          the empty graph

Universe files are line oriented; ``#`` starts a comment and a declaration
may continue onto following lines while a brace or bracket is open::

    events i1 i2 i3
    atoms a b c
    set V = {a b c}
    set H = {a b}
    actual i1 = {a}
    type T = {a b}
    ind h : {i1 i2} -> T = {i1: a, i2: b}

Script files hold one step per line: ``@i2 +b +c -a``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import FormatError, ParseError, ValidationError
from .values import FALSE, TRUE, Atom, FinSet, Graph, Pair, sort_key
from .universe import TypeDenotation, Universe, make_individual

_ID = re.compile(r"[A-Za-z0-9_]+")


# -- value literals ---------------------------------------------------------------


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _fail(text: str, pos: int, expected: str):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    found = text[pos] if pos < len(text) else "end of input"
    raise ParseError(line, col, expected, found)


def read_value(text: str, pos: int = 0):
    """Parse one value literal starting at ``pos``; returns (value, end)."""
    pos = _skip(text, pos)
    if pos >= len(text):
        _fail(text, pos, "a value")
    c = text[pos]
    if c == "[":
        first, pos = read_value(text, pos + 1)
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos += 1
        second, pos = read_value(text, pos)
        pos = _skip(text, pos)
        if pos >= len(text) or text[pos] != "]":
            _fail(text, pos, "']'")
        return Pair(first, second), pos + 1
    if c == "{":
        return _read_braces(text, pos + 1)
    m = _ID.match(text, pos)
    if not m:
        _fail(text, pos, "a value")
    word = m.group()
    if word == "true":
        return TRUE, m.end()
    if word == "false":
        return FALSE, m.end()
    return Atom(word), m.end()


def _read_braces(text: str, pos: int):
    pos = _skip(text, pos)
    if text.startswith(":", pos):
        pos = _skip(text, pos + 1)
        if not text.startswith("}", pos):
            _fail(text, pos, "'}'")
        return Graph(frozenset()), pos + 1
    items = []
    while True:
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == "}":
            break
        key, pos = read_value(text, pos)
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ":":
            image, pos = read_value(text, pos + 1)
            items.append((key, image))
        else:
            items.append((key,))
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos += 1
        elif pos >= len(text):
            _fail(text, pos, "'}'")
    kinds = {len(item) for item in items}
    if kinds == {2}:
        return Graph(frozenset(items)), pos + 1
    if kinds <= {1}:
        return FinSet(frozenset(item[0] for item in items)), pos + 1
    _fail(text, pos, "either all 'x: y' entries or none")


def parse_value(text: str):
    v, pos = read_value(text)
    pos = _skip(text, pos)
    if pos != len(text):
        _fail(text, pos, "end of value")
    return v


# -- universe files ----------------------------------------------------------------


def _statements(text: str):
    """Yield (line number, statement) with comments stripped and brackets joined."""
    buf, start, depth = [], 0, 0
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not buf:
            start = n
        buf.append(line)
        depth += line.count("{") + line.count("[") - line.count("}") - line.count("]")
        if depth <= 0:
            yield start, " ".join(buf)
            buf, depth = [], 0
    if buf:
        raise FormatError(start, "unbalanced brackets")


def _as_set(v, line: int) -> FinSet:
    if isinstance(v, Graph) and not v.pairs:
        return FinSet(frozenset())
    if not isinstance(v, FinSet):
        raise FormatError(line, f"expected a set literal, got {v}")
    return v


def _value_at(text: str, line: int):
    try:
        return parse_value(text)
    except ParseError as e:
        raise FormatError(line, str(e)) from None


_SET = re.compile(r"set\s+(V|H)\s*=\s*(.*)$")
_ACTUAL = re.compile(r"actual\s+(\w+)\s*=\s*(.*)$")
_TYPE = re.compile(r"type\s+(\w+)\s*=\s*(.*)$")
_IND = re.compile(r"ind\s+(\w+)\s*:\s*(\{.*?\})\s*->\s*(\w+|\{.*?\})\s*=\s*(.*)$")


def parse_universe(text: str) -> Universe:
    events, names = [], []
    sets, actual, types, inds = {}, {}, {}, {}
    for line, stmt in _statements(text):
        head = stmt.split(None, 1)[0]
        if head == "events":
            events += [Atom(w) for w in stmt.split()[1:]]
        elif head == "atoms":
            names += [Atom(w) for w in stmt.split()[1:]]
        elif m := _SET.match(stmt):
            sets[m.group(1)] = _as_set(_value_at(m.group(2), line), line)
        elif m := _ACTUAL.match(stmt):
            actual[Atom(m.group(1))] = _as_set(_value_at(m.group(2), line), line)
        elif m := _TYPE.match(stmt):
            name = m.group(1)
            if name in ("bool", "x"):
                raise FormatError(line, f"type name {name!r} is reserved")
            types[name] = TypeDenotation(name, _as_set(_value_at(m.group(2), line), line))
        elif m := _IND.match(stmt):
            inds[m.group(1)] = (line, m.groups()[1:])
        else:
            raise FormatError(line, f"unrecognised declaration {stmt!r}")
    asg = FinSet(frozenset(events))
    possible = sets.get("H", FinSet(frozenset(names)))
    virtual = sets.get("V", FinSet(possible.elements | frozenset(names)))
    individuals = {}
    for name, (line, (dom, cod, graph)) in inds.items():
        domain = _as_set(_value_at(dom, line), line)
        stray = [i for i in domain if i not in asg]
        if stray:
            raise FormatError(line, f"event {stray[0]} of {name} is not declared")
        if cod.startswith("{"):
            codomain = TypeDenotation(f"{name}_type", _as_set(_value_at(cod, line), line))
            types[codomain.name] = codomain
        elif cod in types:
            codomain = types[cod]
        else:
            raise FormatError(line, f"unknown type {cod!r}")
        g = _value_at(graph, line)
        if isinstance(g, FinSet) and not g.elements:
            g = Graph(frozenset())
        if not isinstance(g, Graph):
            raise FormatError(line, f"expected a graph literal for {name}")
        try:
            individuals[name] = make_individual(domain, g, codomain)
        except ValidationError as e:
            raise FormatError(line, f"{name}: {e}") from None
    return Universe(asg, virtual, possible, actual, types, individuals)


def load_universe(path) -> Universe:
    return parse_universe(Path(path).read_text())


def format_universe(u: Universe) -> str:
    """Inverse of :func:`parse_universe` up to declaration order."""
    out = ["events " + " ".join(str(i) for i in u.asg)]
    out.append(f"set H = {u.possible}")
    out.append(f"set V = {u.virtual}")
    for i in sorted(u.actual, key=sort_key):
        out.append(f"actual {i} = {u.actual[i]}")
    for name, t in sorted(u.types.items()):
        if not any(h.codomain is t and name == f"{n}_type" for n, h in u.individuals.items()):
            out.append(f"type {name} = {t.members}")
    for name, h in sorted(u.individuals.items()):
        cod = h.codomain.name
        if cod == f"{name}_type":
            cod = str(h.codomain.members)
        out.append(f"ind {name} : {h.domain} -> {cod} = {h.graph}")
    return "\n".join(out) + "\n"


# -- scripts ----------------------------------------------------------------------


def parse_script(text: str):
    from .scripts import EventStep, Script

    steps = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("@"):
            raise FormatError(n, "a step must start with '@event'")
        m = _ID.match(line, 1)
        if not m:
            raise FormatError(n, "missing event name after '@'")
        event, pos = Atom(m.group()), m.end()
        enters, leaves = [], []
        while True:
            pos = _skip(line, pos)
            if pos >= len(line):
                break
            sign = line[pos]
            if sign not in "+-":
                raise FormatError(n, f"expected '+' or '-' at column {pos + 1}")
            try:
                v, pos = read_value(line, pos + 1)
            except ParseError as e:
                raise FormatError(n, str(e)) from None
            (enters if sign == "+" else leaves).append(v)
        try:
            steps.append(EventStep(event, FinSet.from_iter(enters), FinSet.from_iter(leaves)))
        except ValueError as e:
            raise FormatError(n, str(e)) from None
    return Script(tuple(steps))


def load_script(path):
    return parse_script(Path(path).read_text())


def format_script(script) -> str:
    lines = []
    for step in script.steps:
        parts = [f"@{step.event}"]
        parts += [f"+{v}" for v in step.enters]
        parts += [f"-{v}" for v in step.leaves]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
