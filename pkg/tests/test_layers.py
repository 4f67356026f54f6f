from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vdc.checks import brute_filter
from vdc.errors import DepthExceeded, Improper, SortMismatch, Undefined
from vdc.evaluator import EvalContext
from vdc.generate import random_layer_program, random_universe
from vdc.layers import (Layer, LayeredStore, check_layer_taxonomy, comprehend_layer,
                        layer_role, render_tower)
from vdc.parser import parse_term
from vdc.syntax import Const, Member, Var
from vdc.values import Atom, FinSet

a, b = Atom("a"), Atom("b")


def _store(u, **kw):
    return LayeredStore(u.type("T"), **kw), EvalContext(u, Atom("i1"))


def test_layer_zero_is_the_base(u):
    store, _ = _store(u)
    assert store.layer(0).entities == FinSet.of(a, b)


def test_select_one_member(u):
    store, ctx = _store(u)
    layer = comprehend_layer(store, 0, "h", parse_term("h = 'a"), ctx)
    assert layer == Layer(1, FinSet.of(FinSet.of(a)))


def test_true_gives_the_whole_base(u):
    store, ctx = _store(u)
    layer = comprehend_layer(store, 0, "h", parse_term("true"), ctx)
    assert layer.entities == FinSet.of(FinSet.of(a, b))


def test_second_layer_counts_subsets(u):
    store, ctx = _store(u)
    layer = comprehend_layer(store, 1, "h", parse_term("'a in h"), ctx)
    (entity,) = layer.entities
    assert len(entity) == 2 ** (2 - 1)
    oracle = {FinSet(frozenset(c)) for k in range(3) for c in itertools.combinations([a, b], k)
              if a in c}
    assert entity.elements == oracle


def test_depth_cap(u):
    store, ctx = _store(u)
    with pytest.raises(DepthExceeded):
        comprehend_layer(store, 2, "h", parse_term("true"), ctx)
    deeper, ctx = _store(u, max_depth=3)
    comprehend_layer(deeper, 2, "h", parse_term("true"), ctx)
    assert len(deeper.layer(3).entities) == 1


def test_sort_errors_propagate(u):
    store, ctx = _store(u)
    with pytest.raises(SortMismatch):
        comprehend_layer(store, 1, "h", parse_term("h = 'a"), ctx)


def test_layer_roles():
    assert layer_role(0).world_assignments == "data base"
    assert layer_role(0).states == "roles" and layer_role(0).concepts == "types"
    assert layer_role(0).event_assignments == "frames"
    assert layer_role(1).world_assignments == "knowledge base"
    assert layer_role(2).world_assignments == "metaknowledge base"
    with pytest.raises(DepthExceeded):
        layer_role(3)


def test_taxonomy_detects_foreign_entities(u):
    store, ctx = _store(u)
    comprehend_layer(store, 0, "h", parse_term("true"), ctx)
    assert check_layer_taxonomy(store) == []
    store.layers[1] = Layer(1, FinSet.of(FinSet.of(Atom("zz"))))
    (bad,) = check_layer_taxonomy(store)
    assert bad.layer == 1 and bad.witness == FinSet.of(Atom("zz"))


def test_render_tower(u):
    store, ctx = _store(u)
    comprehend_layer(store, 0, "h", parse_term("h = 'a"), ctx)
    assert render_tower(store) == "layer 0 (data base):\n  a\n  b\nlayer 1 (knowledge base):\n  {a}"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_programs_stay_sound(seed):
    rng = random.Random(seed)
    u = random_universe(rng, max_type=4)
    store = LayeredStore(u.type("T"))
    event = rng.choice(list(u.asg))
    ctx = EvalContext(u, event)
    for j, var, phi in random_layer_program(u, rng, "T"):
        try:
            layer = comprehend_layer(store, j, var, phi, ctx)
        except (Undefined, Improper):
            continue
        assert brute_filter(u, "T", j, var, phi, event, 2 ** 20) in layer.entities
        assert check_layer_taxonomy(store) == []
    assert len(store.layers) <= 3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_membership_reproduces_an_entity(seed):
    rng = random.Random(seed)
    u = random_universe(rng, max_type=4)
    store = LayeredStore(u.type("T"))
    ctx = EvalContext(u, next(iter(u.asg)))
    j = rng.randrange(2)
    members = list(u.type("T").members)
    if j == 0:
        E = FinSet.from_iter(m for m in members if rng.random() < 0.5)
    else:
        E = FinSet.from_iter(FinSet.from_iter(c) for k in range(len(members) + 1)
                             for c in itertools.combinations(members, k) if rng.random() < 0.3)
    layer = comprehend_layer(store, j, "h", Member(Var("h"), Const(E)), ctx)
    assert layer.entities == FinSet.of(E)
