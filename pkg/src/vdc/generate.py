"""Random universes, well-sorted terms and valid scripts for property checks.

Everything takes an explicit ``random.Random`` so runs replay from a seed.
"""

from __future__ import annotations

import random
from typing import Optional

from .scripts import EventStep, Script
from .syntax import (BOOL, And, App, Apply, Arrow, Base, BoolSort, Compr, Const, Couple,
                     Desc, Eq, Exists, Forall, Iff, Implies, Lam, Member, Not, Or, PairT,
                     Power, Prod, Var)
from .syntax import depth as term_depth
from .universe import Individual, TypeDenotation, Universe
from .values import FALSE, TRUE, Atom, FinSet, Graph

_POOLS = ("a b c d", "p q r s")


def random_universe(rng: random.Random, max_events: int = 3, max_type: int = 3,
                    n_types: int = 2, individuals: int = 2) -> Universe:
    """A small universe satisfying U_i <= H <= V, with disjoint base types."""
    events = [Atom(f"i{k}") for k in range(1, rng.randint(1, max_events) + 1)]
    types = {}
    for n, name in enumerate(["T", "S"][:n_types]):
        pool = [Atom(a) for a in _POOLS[n].split()]
        types[name] = TypeDenotation(name, FinSet(frozenset(
            rng.sample(pool, rng.randint(1, max_type)))))
    H = set().union(*(t.members.elements for t in types.values()))
    extra = [Atom("e"), Atom("f")]
    if rng.random() < 0.5:
        H.add(extra[0])
    V = set(H)
    if rng.random() < 0.5:
        V.add(extra[1])
    hs = sorted(H, key=str)
    actual = {i: FinSet(frozenset(v for v in hs if rng.random() < 0.5)) for i in events}
    inds = {}
    for name, t in types.items():
        for k in range(individuals):
            dom = [i for i in events if rng.random() < 0.7]
            members = list(t.members)
            g = Graph(frozenset((i, rng.choice(members)) for i in dom))
            inds[f"{name.lower()}{k}"] = Individual(FinSet(frozenset(dom)), g, t)
    return Universe(FinSet(frozenset(events)), FinSet(frozenset(V)), FinSet(frozenset(H)),
                    actual, types, inds)


class TermGen:
    """Type-directed generator of well-sorted terms no deeper than ``max_depth``."""

    def __init__(self, u: Universe, rng: random.Random, max_depth: int = 5):
        self.u = u
        self.rng = rng
        self.max_depth = max_depth
        self.counter = 0
        self.bases = [Base(n) for n in u.types if n != "bool"]
        if not self.bases:
            raise ValueError("term generation needs at least one declared type")
        self.small = self.bases + [BOOL]

    def fresh(self) -> str:
        while True:
            self.counter += 1
            name = f"x{self.counter}"
            if name not in self.u.individuals:
                return name

    def sort(self, budget: int = 2):
        """A random sort with a small carrier."""
        r = self.rng.random()
        b = self.rng.choice(self.bases)
        if budget <= 0 or r < 0.45:
            return self.rng.choice(self.small)
        if r < 0.6:
            return Prod(b, self.rng.choice(self.small))
        if r < 0.75:
            return Power(b)
        return Arrow(b, self.rng.choice(self.small))

    def term(self, sort=None, scope: Optional[list] = None, depth: Optional[int] = None):
        sort = self.sort() if sort is None else sort
        scope = list(scope or [])
        depth = self.max_depth if depth is None else depth
        return self._gen(sort, scope, depth)

    def app_term(self, scope=None, depth=None):
        """An application whose result has a random small sort."""
        depth = self.max_depth if depth is None else depth
        s = self.sort(1)
        a = self.rng.choice(self.small)
        return App(self._gen(Arrow(a, s), list(scope or []), depth - 1),
                   self._gen(a, list(scope or []), depth - 1))

    # -- internals --

    def _min_depth(self, s) -> int:
        if isinstance(s, (Base, BoolSort)):
            return 1
        if isinstance(s, Prod):
            return 1 + max(self._min_depth(s.l), self._min_depth(s.r))
        if isinstance(s, Power):
            return 2
        if isinstance(s, Arrow):
            return 1 + self._min_depth(s.cod)
        raise TypeError(s)

    def _leaf(self, s, scope):
        vars_ = [Var(n, vs) for n, vs in scope if vs == s]
        if isinstance(s, Base):
            inds = [Var(n) for n, h in self.u.individuals.items()
                    if h.codomain.name == s.name and n not in dict(scope)]
            consts = [Const(v) for v in self.u.type(s.name).members]
            pool = vars_ * 2 + inds * 2 + consts
            return self.rng.choice(pool)
        if isinstance(s, BoolSort):
            return self.rng.choice(vars_ + [Const(TRUE), Const(FALSE)])
        if vars_ and self.rng.random() < 0.5:
            return self.rng.choice(vars_)
        if isinstance(s, Prod):
            return PairT(self._leaf(s.l, scope), self._leaf(s.r, scope))
        if isinstance(s, Power):
            x = self.fresh()
            return Compr(x, s.inner, self.rng.choice([Const(TRUE), Const(FALSE)]))
        if isinstance(s, Arrow):
            x = self.fresh()
            return Lam(x, s.dom, self._leaf(s.cod, scope + [(x, s.dom)]))
        raise TypeError(s)

    def _gen(self, s, scope, depth):
        if depth <= self._min_depth(s) or self.rng.random() < 0.2:
            return self._leaf(s, scope)
        t = self._node(s, scope, depth)
        # a child may have needed more room than was left
        return t if term_depth(t) <= depth else self._leaf(s, scope)

    def _node(self, s, scope, depth):
        options = ["app"]
        if isinstance(s, (Base, Prod)):
            options += ["desc"]
        if isinstance(s, Prod):
            options += ["pair", "pair"]
        if isinstance(s, Arrow):
            options += ["lam", "lam"]
            if isinstance(s.cod, Prod):
                options += ["couple", "couple"]
        if isinstance(s, Power):
            options += ["compr", "compr"]
        if isinstance(s, BoolSort):
            options += ["eq", "eq", "member", "not", "bin", "bin", "quant", "apply"]
        choice = self.rng.choice(options)
        d = depth - 1
        rng = self.rng
        if choice == "app":
            a = rng.choice(self.small)
            if d <= self._min_depth(Arrow(a, s)):
                return self._leaf(s, scope)
            return App(self._gen(Arrow(a, s), scope, d), self._gen(a, scope, d))
        if choice == "desc":
            x = self.fresh()
            return Desc(x, s, self._gen(BOOL, scope + [(x, s)], d))
        if choice == "pair":
            return PairT(self._gen(s.l, scope, d), self._gen(s.r, scope, d))
        if choice == "lam":
            x = self.fresh()
            return Lam(x, s.dom, self._gen(s.cod, scope + [(x, s.dom)], d))
        if choice == "couple":
            return Couple(self._gen(Arrow(s.dom, s.cod.l), scope, d),
                          self._gen(Arrow(s.dom, s.cod.r), scope, d))
        if choice == "compr":
            x = self.fresh()
            return Compr(x, s.inner, self._gen(BOOL, scope + [(x, s.inner)], d))
        if choice == "eq":
            t = self.sort(1) if d > 2 else rng.choice(self.small)
            return Eq(self._gen(t, scope, d), self._gen(t, scope, d))
        if choice == "member":
            b = rng.choice(self.bases)
            return Member(self._gen(b, scope, d), self._gen(Power(b), scope, d))
        if choice == "not":
            return Not(self._gen(BOOL, scope, d))
        if choice == "bin":
            node = rng.choice([And, Or, Implies, Iff])
            return node(self._gen(BOOL, scope, d), self._gen(BOOL, scope, d))
        if choice == "quant":
            x = self.fresh()
            qs = rng.choice(self.small + [Power(rng.choice(self.bases))])
            node = rng.choice([Forall, Exists])
            return node(x, qs, self._gen(BOOL, scope + [(x, qs)], d))
        if choice == "apply":
            b = rng.choice(self.bases)
            ps = rng.choice([Power(b), Arrow(b, BOOL)])
            return Apply(self._gen(ps, scope, d), self._gen(b, scope, d))
        raise AssertionError(choice)


def random_script(u: Universe, rng: random.Random, max_steps: int = 20,
                  initial: FinSet = FinSet(frozenset())) -> Script:
    """A script every step of which is valid from ``initial``."""
    live = set(initial.elements)
    events = list(u.asg)
    possible = list(u.possible)
    steps = []
    for _ in range(rng.randint(1, max_steps)):
        leaves = {v for v in sorted(live, key=str) if rng.random() < 0.3}
        enters = {v for v in possible if v not in leaves and rng.random() < 0.3}
        steps.append(EventStep(rng.choice(events), FinSet(frozenset(enters)),
                               FinSet(frozenset(leaves))))
        live = (live - leaves) | enters
    return Script(tuple(steps))


def formula_pool(u: Universe, rng: random.Random, n: int, var: str = "y",
                 type_name: str = "T", max_depth: int = 4) -> list:
    """Formulas with one free variable ``var`` of the base sort ``type_name``.

    A few fixed shapes with known satisfier counts come first.
    """
    y, b = Var(var, Base(type_name)), Base(type_name)
    members = list(u.type(type_name).members)
    pool = [Eq(y, y), Not(Eq(y, y)), Eq(y, Const(members[0]))]
    if len(members) > 1:
        pool.append(Or(Eq(y, Const(members[0])), Eq(y, Const(members[-1]))))
    gen = TermGen(u, rng, max_depth)
    while len(pool) < n:
        pool.append(gen.term(BOOL, [(var, b)]))
    return pool[:n]


def random_layer_program(u: Universe, rng: random.Random, base: str, steps: int = 10,
                         max_depth: int = 2, var: str = "h") -> list:
    """Up to ``steps`` comprehension requests ``(j, var, phi)`` with j below max_depth."""
    from .layers import layer_sort

    gen = TermGen(u, rng, 4)
    out = []
    for _ in range(rng.randint(1, steps)):
        j = rng.randrange(max_depth)
        s = layer_sort(base, j)
        h = Var(var, s)
        if j == 0:
            fixed = [Eq(h, Const(rng.choice(list(u.type(base).members)))), Const(TRUE)]
        else:
            inner = gen.term(layer_sort(base, j - 1), [(var, s)], 2)
            fixed = [Member(inner, h), Not(Member(inner, h)), Const(FALSE)]
        phi = rng.choice(fixed) if rng.random() < 0.4 else gen.term(BOOL, [(var, s)])
        out.append((j, var, phi))
    return out
