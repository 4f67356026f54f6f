from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vdc.errors import FormatError, ParseError
from vdc.formats import format_universe, parse_script, parse_universe, parse_value
from vdc.generate import random_universe
from vdc.values import FALSE, TRUE, Atom, FinSet, Graph, Pair

a, b, c = Atom("a"), Atom("b"), Atom("c")
i1, i2 = Atom("i1"), Atom("i2")


def test_value_literals():
    assert parse_value("a") == a
    assert parse_value("true") == TRUE and parse_value("false") == FALSE
    assert parse_value("[a, {b c}]") == Pair(a, FinSet.of(b, c))
    assert parse_value("{a, b}") == FinSet.of(a, b)
    assert parse_value("{i1: a, i2: {i1: b}}") == Graph.of({i1: a, i2: Graph.of({i1: b})})
    assert parse_value("{:}") == Graph(frozenset())
    assert parse_value("{}") == FinSet.of()
    with pytest.raises(ParseError):
        parse_value("{a b")


def test_sample_universe(u):
    assert u.asg == FinSet.of(i1, i2, Atom("i3"))
    assert u.virtual == FinSet.of(a, b, c) and u.possible == FinSet.of(a, b)
    assert u.actual[i2] == FinSet.of(a, b)
    assert u.individuals["h"].graph == Graph.of({i1: a, i2: b})


def test_comments_continuations_and_defaults():
    u = parse_universe("""
        events i1 i2   # two events
        atoms a b
        type T = {a
                  b}
        ind g : {i1} -> {a} = {i1: a}
    """)
    assert u.types["T"].members == FinSet.of(a, b)
    assert u.possible == FinSet.of(a, b) == u.virtual
    assert u.individuals["g"].codomain.name == "g_type"


@pytest.mark.parametrize("text, line", [
    ("events i1\nbogus", 2),
    ("events i1\ntype bool = {a}", 2),
    ("events i1\ntype T = {a}\nind h : {i1 i2} -> T = {i1: a}", 3),
    ("events i1 i2\ntype T = {a}\nind h : {i1 i2} -> T = {i1: a}", 3),
    ("events i1\nind h : {i1} -> Q = {i1: a}", 2),
])
def test_universe_errors_name_the_line(text, line):
    with pytest.raises(FormatError) as e:
        parse_universe(text)
    assert e.value.line == line


def test_script_errors():
    with pytest.raises(FormatError) as e:
        parse_script("@i1 +a\ni2 +b")
    assert e.value.line == 2
    with pytest.raises(FormatError):
        parse_script("@i1 +a -a")
    with pytest.raises(FormatError):
        parse_script("@i1 *a")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_universe_round_trip(seed):
    u = random_universe(random.Random(seed))
    again = parse_universe(format_universe(u))
    assert again.asg == u.asg and again.possible == u.possible and again.virtual == u.virtual
    assert again.types == u.types
    assert again.individuals == u.individuals
    assert {i: s for i, s in again.actual.items()} == dict(u.actual)
