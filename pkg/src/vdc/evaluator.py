"""The evaluation map: terms evaluated at an event, and globally over all events.

Evaluation is strict. ``Undefined`` from any subterm propagates, a
description with zero or several satisfiers raises ``Improper``, and a
lambda denotes the graph of its body over the finite carrier of its binder
sort, with points where the body has no value left out.

Binders can be realised two ways, selected by ``binding``:

``"env"``
    the bound value goes into the environment and the event is unchanged.
``"index"``
    the event itself is extended to the pair ``[i, d]``; a variable bound
    ``k`` binders out is read back as the second component after taking
    ``k`` first projections. Nested binders nest to the left,
    ``[[i, d1], d2]``.

Both give the same results; the test-suite checks this on generated terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

from .errors import Improper, NotApplicable, UnboundVariable, Undefined
from .sorts import sort_domain
from .syntax import (And, App, Apply, Compr, Const, Couple, Desc, Eq, Exists, Forall,
                     Iff, Implies, Lam, Member, Not, Or, PairT, Var, free_vars, fresh)
from .universe import DEFAULT_CAP, Universe, apply_individual
from .values import Bool, FinSet, Graph, Pair, apply_graph, compose, couple

BINDINGS = ("env", "index")


@dataclass(frozen=True)
class EvalContext:
    universe: Universe
    event: object
    env: Mapping = field(default_factory=dict)
    binders: tuple = ()
    cap: int = DEFAULT_CAP

    def base_event(self):
        """The event with any index pairs added by binders stripped off."""
        e = self.event
        for _ in self.binders:
            e = e.first
        return e

    def at(self, event) -> "EvalContext":
        return replace(self, event=event)


def _truth(v) -> bool:
    if not isinstance(v, Bool):
        raise NotApplicable(v)
    return v.b


class _Evaluator:
    def __init__(self, u: Universe, binding: str, cap: int):
        if binding not in BINDINGS:
            raise ValueError(f"binding must be one of {BINDINGS}")
        self.u = u
        self.index = binding == "index"
        self.cap = cap

    def bind(self, name, value, event, env, binders):
        if self.index:
            return Pair(event, value), env, binders + (name,)
        return event, {**env, name: value}, binders

    def lookup(self, name, event, env, binders):
        if name in binders:
            k = len(binders) - 1 - max(n for n, b in enumerate(binders) if b == name)
            idx = event
            for _ in range(k):
                idx = idx.first
            return idx.second
        if name in env:
            return env[name]
        h = self.u.individuals.get(name)
        if h is None:
            raise UnboundVariable(name)
        base = event
        for _ in binders:
            base = base.first
        return apply_individual(h, base)

    def run(self, t, event, env, binders):
        ev = self.run
        if isinstance(t, Const):
            return t.v
        if isinstance(t, Var):
            return self.lookup(t.name, event, env, binders)
        if isinstance(t, App):
            f = ev(t.fn, event, env, binders)
            a = ev(t.arg, event, env, binders)
            return apply_graph(f, a)
        if isinstance(t, Lam):
            pairs = []
            for d in sort_domain(t.sort, self.u, self.cap):
                try:
                    pairs.append((d, ev(t.body, *self.bind(t.var, d, event, env, binders))))
                except (Undefined, Improper):
                    pass
            return Graph(frozenset(pairs))
        if isinstance(t, PairT):
            return Pair(ev(t.l, event, env, binders), ev(t.r, event, env, binders))
        if isinstance(t, Couple):
            f = ev(t.l, event, env, binders)
            g = ev(t.r, event, env, binders)
            for side in (f, g):
                if not isinstance(side, Graph):
                    raise NotApplicable(side)
            return couple(f, g)
        if isinstance(t, Desc):
            found = self.satisfiers(t.var, t.sort, t.body, event, env, binders)
            if len(found) != 1:
                raise Improper(FinSet.from_iter(found))
            return found[0]
        if isinstance(t, Compr):
            return FinSet.from_iter(self.satisfiers(t.var, t.sort, t.body, event, env, binders))
        if isinstance(t, Eq):
            return Bool(ev(t.l, event, env, binders) == ev(t.r, event, env, binders))
        if isinstance(t, Member):
            e = ev(t.elem, event, env, binders)
            s = ev(t.set, event, env, binders)
            if not isinstance(s, FinSet):
                raise NotApplicable(s)
            return Bool(e in s)
        if isinstance(t, Not):
            return Bool(not _truth(ev(t.f, event, env, binders)))
        if isinstance(t, (And, Or, Implies, Iff)):
            p = _truth(ev(t.f, event, env, binders))
            q = _truth(ev(t.g, event, env, binders))
            if isinstance(t, And):
                return Bool(p and q)
            if isinstance(t, Or):
                return Bool(p or q)
            if isinstance(t, Implies):
                return Bool(not p or q)
            return Bool(p == q)
        if isinstance(t, (Forall, Exists)):
            n = len(self.satisfiers(t.var, t.sort, t.f, event, env, binders))
            total = len(sort_domain(t.sort, self.u, self.cap))
            return Bool(n == total) if isinstance(t, Forall) else Bool(n > 0)
        if isinstance(t, Apply):
            p = ev(t.pred, event, env, binders)
            a = ev(t.arg, event, env, binders)
            if isinstance(p, FinSet):
                return Bool(a in p)
            r = apply_graph(p, a)
            _truth(r)
            return r
        raise TypeError(f"not a term: {t!r}")

    def satisfiers(self, var, sort, body, event, env, binders) -> list:
        """Members of ``sort`` making ``body`` true. Undefined anywhere poisons all."""
        out = []
        for d in sort_domain(sort, self.u, self.cap):
            if _truth(self.run(body, *self.bind(var, d, event, env, binders))):
                out.append(d)
        return out


def eval_at(t, ctx: EvalContext, binding: str = "env"):
    """The value of ``t`` at ``ctx.event``. Raises Undefined, Improper or NotApplicable."""
    return _Evaluator(ctx.universe, binding, ctx.cap).run(t, ctx.event, dict(ctx.env), ctx.binders)


def _defined(t, u: Universe, env, binding: str, cap: int, events: Optional[Iterable]):
    ev = _Evaluator(u, binding, cap)
    pairs = []
    for i in (u.asg if events is None else events):
        try:
            pairs.append((i, ev.run(t, i, dict(env or {}), ())))
        except (Undefined, Improper):
            pass
    return Graph(frozenset(pairs))


def eval_global(t, u: Universe, env: Optional[Mapping] = None, binding: str = "env",
                cap: int = DEFAULT_CAP, events: Optional[Iterable] = None) -> Graph:
    """The graph of i -> value of t at i, over every event where t has a value."""
    return _defined(t, u, env, binding, cap, events)


def epsilon(arguments: Iterable) -> Graph:
    """The application operator as a graph, restricted to the given [f, n] pairs."""
    pairs = []
    for p in arguments:
        try:
            pairs.append((p, apply_graph(p.first, p.second)))
        except Undefined:
            pass
    return Graph(frozenset(pairs))


def eval_via_epsilon(t, u: Universe, env: Optional[Mapping] = None,
                     cap: int = DEFAULT_CAP) -> Graph:
    """Global value of an application as epsilon composed with <fn, arg>."""
    if not isinstance(t, App):
        raise TypeError("eval_via_epsilon needs an application")
    fn = eval_global(t.fn, u, env, cap=cap)
    arg = eval_global(t.arg, u, env, cap=cap)
    coupled = couple(fn, arg)
    return compose(epsilon(coupled.range()), coupled)


def eval_description(d: Desc, ctx: EvalContext, binding: str = "env"):
    if not isinstance(d, Desc):
        raise TypeError("not a description")
    return eval_at(d, ctx, binding)


def eval_comprehension(c: Compr, ctx: EvalContext, binding: str = "env") -> FinSet:
    if not isinstance(c, Compr):
        raise TypeError("not a comprehension")
    return eval_at(c, ctx, binding)


def eval_in_index(body, var: str, value, ctx: EvalContext):
    """Evaluate ``body`` at the extended index [event, value] with ``var`` bound there."""
    inner = replace(ctx, event=Pair(ctx.event, value), binders=ctx.binders + (var,))
    return eval_at(body, inner, binding="index")


def check_eta(h_graph: Graph, t, ctx: EvalContext, domain: Optional[Iterable] = None) -> bool:
    """Whether lambda x.(t x) has exactly the graph ``h_graph``.

    ``domain`` defaults to the events of the universe together with the
    domain of ``h_graph``.
    """
    try:
        if eval_at(t, ctx) != h_graph:
            return False
    except (Undefined, Improper, NotApplicable):
        return False
    x = fresh("x", free_vars(t) | set(ctx.env))
    if domain is None:
        domain = ctx.universe.asg.elements | h_graph.domain()
    app = App(t, Var(x))
    pairs = []
    for d in domain:
        try:
            pairs.append((d, eval_at(app, replace(ctx, env={**ctx.env, x: d}))))
        except (Undefined, Improper):
            pass
    return Graph(frozenset(pairs)) == h_graph


__all__ = ["EvalContext", "eval_at", "eval_global", "eval_via_epsilon", "epsilon",
           "eval_description", "eval_comprehension", "eval_in_index", "check_eta"]
