"""Universes, individuals, variable domains and concepts.

A universe fixes the assignments (events) and the three nested pools of
individuals: the actual ones per event, the possible ones ``H`` and the
virtual ones ``V``. Individuals are finite partial maps from events to states,
kept as the triple (event set, graph, codomain type).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import prod
from typing import Iterator, Mapping

from .errors import (NotFunctional, OutOfDomain, OutOfType, TooLarge,
                     UndefinedAt, UnknownType)
from .values import BOOLS, FinSet, Graph, Pair, Value, sort_key

DEFAULT_CAP = 2 ** 20
LIFT_CAP = 2 ** 12


@dataclass(frozen=True)
class TypeDenotation:
    name: str
    members: FinSet

    def __contains__(self, v) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


BOOL_TYPE = TypeDenotation("bool", BOOLS)


@dataclass(frozen=True)
class Individual:
    """The triple <I, h, T>. Build through :func:`make_individual` to validate."""

    domain: FinSet
    graph: Graph
    codomain: TypeDenotation

    def __call__(self, event):
        return apply_individual(self, event)

    def __str__(self) -> str:
        return f"{self.graph} : {self.domain} -> {self.codomain.name}"


@dataclass(frozen=True)
class VariableDomain:
    """H_T(I): every total map from the event set I into T."""

    domain: FinSet
    codomain: TypeDenotation

    @property
    def size(self) -> int:
        return len(self.codomain) ** len(self.domain)

    def __contains__(self, h) -> bool:
        return domain_contains(self, h)

    def __iter__(self) -> Iterator[Individual]:
        return iter(enumerate_domain(self))


@dataclass(frozen=True)
class Universe:
    asg: FinSet
    virtual: FinSet
    possible: FinSet
    actual: Mapping = field(default_factory=dict)
    types: Mapping = field(default_factory=dict)
    individuals: Mapping = field(default_factory=dict)

    def actual_at(self, event) -> FinSet:
        return self.actual.get(event, FinSet(frozenset()))

    def type(self, name: str) -> TypeDenotation:
        if name == "bool":
            return BOOL_TYPE
        try:
            return self.types[name]
        except KeyError:
            raise UnknownType(name) from None

    def with_actual(self, actual: Mapping) -> "Universe":
        return replace(self, actual=dict(actual))

    def events(self) -> list:
        return list(self.asg)


# -- individuals -------------------------------------------------------------------


def make_individual(domain: FinSet, graph: Graph, codomain: TypeDenotation) -> Individual:
    for x, _ in graph:
        if x not in domain:
            raise OutOfDomain(x)
    for _, y in graph:
        if y not in codomain:
            raise OutOfType(y)
    for i in domain:
        n = len(graph.images(i))
        if n != 1:
            raise NotFunctional(i, n)
    return Individual(domain, graph, codomain)


def apply_individual(h: Individual, event) -> Value:
    if event not in h.domain:
        raise UndefinedAt(event)
    return h.graph.images(event)[0]


# -- variable domains ---------------------------------------------------------------


def domain_contains(d: VariableDomain, h: Individual) -> bool:
    if h.domain != d.domain:
        return False
    g = h.graph
    if any(x not in d.domain for x, _ in g):
        return False
    if any(y not in d.codomain for _, y in g):
        return False
    return all(len(g.images(i)) == 1 for i in d.domain)


def enumerate_domain(d: VariableDomain, cap: int = DEFAULT_CAP) -> list[Individual]:
    if d.size > cap:
        raise TooLarge(d.size, cap)
    events = list(d.domain)
    members = list(d.codomain.members)
    out = []
    for images in itertools.product(members, repeat=len(events)):
        g = Graph(frozenset(zip(events, images)))
        out.append(Individual(d.domain, g, d.codomain))
    return out


def function_space(events: list, choices: list[list], cap: int) -> Iterator[Graph]:
    """All graphs picking one value from ``choices[k]`` for ``events[k]``."""
    size = prod(len(c) for c in choices)
    if size > cap:
        raise TooLarge(size, cap)
    for images in itertools.product(*choices):
        yield Graph(frozenset(zip(events, images)))


# -- taxonomy ---------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: Value

    def __str__(self) -> str:
        return f"{self.rule}: witness {self.witness}"


@dataclass
class TaxonomyReport:
    violations: list = field(default_factory=list)
    checked: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        bad = {v.rule for v in self.violations}
        out = [f"{'FAIL' if rule in bad else 'PASS'} {rule}" for rule in self.checked]
        out += [f"  {v}" for v in self.violations]
        out += [f"SKIP {s}" for s in self.skipped]
        return out


def _witnesses(report: TaxonomyReport, rule: str, small, big) -> None:
    report.checked.append(rule)
    for v in small:
        if v not in big:
            report.violations.append(Violation(rule, v))


def check_taxonomy(u: Universe, lift_cap: int = LIFT_CAP, lifted: bool = True) -> TaxonomyReport:
    """Check U_i <= H <= V for every event, then the same chain on function spaces.

    Function-space levels are enumerated only while they stay under
    ``lift_cap``; larger ones are listed in ``report.skipped``.
    """
    report = TaxonomyReport()
    for i in u.asg:
        _witnesses(report, f"U_{i} <= H", u.actual_at(i), u.possible)
    _witnesses(report, "actual events <= Asg", sorted(u.actual, key=sort_key), u.asg)
    _witnesses(report, "H <= V", u.possible, u.virtual)
    for name, t in sorted(u.types.items()):
        _witnesses(report, f"{name} <= H", t.members, u.possible)
    if lifted:
        _check_lifted(u, report, lift_cap)
    return report


def _check_lifted(u: Universe, report: TaxonomyReport, cap: int) -> None:
    events = list(u.asg)
    H = list(u.possible)
    levels = [
        ("U^Asg <= H^Asg", [list(u.actual_at(i)) for i in events], u.possible),
        ("H^Asg <= V^Asg", [H for _ in events], u.virtual),
    ]
    for rule, choices, target in levels:
        try:
            space = list(function_space(events, choices, cap))
        except TooLarge as e:
            report.skipped.append(f"{rule} ({e.size} functions > {cap})")
            continue
        report.checked.append(rule)
        for f in space:
            bad = [y for _, y in f if y not in target]
            if bad:
                report.violations.append(Violation(rule, f))
                break
        # second index: sequences of the level-one functions, one per event
        nested_rule = f"({rule.split(' <= ')[0]})^Asg <= ({rule.split(' <= ')[1]})^Asg"
        size = len(space) ** len(events)
        if size > cap:
            report.skipped.append(f"{nested_rule} ({size} functions > {cap})")
            continue
        report.checked.append(nested_rule)
        for F in function_space(events, [space] * len(events), cap):
            if any(y not in target for _, f in F for _, y in f):
                report.violations.append(Violation(nested_rule, F))
                break


# -- concepts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Concept:
    """A concept held extensionally as its class of pairs [value, event set].

    ``defined_on`` lists the event sets the operator is defined at, so that an
    empty slice can be told apart from an undefined one.
    """

    klass: FinSet
    defined_on: frozenset

    def at(self, events: FinSet) -> FinSet:
        if events not in self.defined_on:
            raise UndefinedAt(events)
        return FinSet(frozenset(p.first for p in self.klass.elements if p.second == events))

    def slices(self) -> dict:
        return {I: self.at(I) for I in sorted(self.defined_on, key=sort_key)}

    @classmethod
    def from_map(cls, mapping: Mapping) -> "Concept":
        pairs = frozenset(Pair(v, I) for I, vs in mapping.items() for v in vs)
        return cls(FinSet(pairs), frozenset(mapping))


def concept_at(c: Concept, event) -> FinSet:
    return c.at(FinSet.of(event))
