"""Two ways of building concepts over event sets, and getting individuals back.

The type-free scheme sends an event set ``I`` to ``{I}``; the typed scheme
sends it to ``I x T``. Either concept is stored extensionally as its class
of pairs ``[value, I]``. A concept built from a single individual gives a
singleton at every single event, and the individual can be read off those
slices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import TooLarge, UndefinedAt, UnknownType
from .universe import (DEFAULT_CAP, Concept, Individual, TypeDenotation, Universe,
                       VariableDomain, apply_individual, enumerate_domain)
from .values import FinSet, Graph, Pair, apply_graph, couple, diagonal


@dataclass(frozen=True)
class TypeFree:
    def __str__(self) -> str:
        return "typefree"


@dataclass(frozen=True)
class Typed:
    T: TypeDenotation

    def __str__(self) -> str:
        return f"typed:{self.T.name}"


ConceptScheme = Union[TypeFree, Typed]


def subsets(xs: Iterable, cap: int = DEFAULT_CAP) -> list[FinSet]:
    xs = list(xs)
    if 2 ** len(xs) > cap:
        raise TooLarge(2 ** len(xs), cap)
    return [FinSet(frozenset(c))
            for k in range(len(xs) + 1) for c in itertools.combinations(xs, k)]


def event_sets(u: Universe, cap: int = DEFAULT_CAP, declared_only: bool = False) -> list[FinSet]:
    """Every subset of Asg, or with ``declared_only`` just the singletons,
    Asg itself and the domains of declared individuals."""
    if not declared_only:
        return subsets(u.asg, cap)
    found = {FinSet.of(i) for i in u.asg} | {u.asg}
    found |= {h.domain for h in u.individuals.values()}
    return sorted(found, key=lambda s: (len(s), [str(e) for e in s]))


def scheme_slice(scheme: ConceptScheme, events: FinSet) -> FinSet:
    if isinstance(scheme, TypeFree):
        return FinSet.of(events)
    return FinSet(frozenset(Pair(i, t) for i in events for t in scheme.T.members))


def build_concept(scheme: ConceptScheme, u: Universe, cap: int = DEFAULT_CAP,
                  declared_only: bool = False) -> Concept:
    if isinstance(scheme, Typed) and u.types.get(scheme.T.name) != scheme.T:
        raise UnknownType(scheme.T.name)
    return Concept.from_map({I: scheme_slice(scheme, I)
                             for I in event_sets(u, cap, declared_only)})


def coupled_slice(T: TypeDenotation, events: FinSet, cap: int = DEFAULT_CAP) -> FinSet:
    """{ <J, h> i | i in I, h in H_T(I) } with J the identity on I."""
    J = diagonal(events)
    out = set()
    for h in enumerate_domain(VariableDomain(events, T), cap):
        coupled = couple(J, h.graph)
        for i in events:
            out.add(apply_graph(coupled, i))
    return FinSet(frozenset(out))


def individual_concept(h: Individual, coupled: bool = False) -> Concept:
    """The concept an individual generates on the subsets of its domain.

    Plain: I -> {h(i) | i in I}. Coupled: I -> {[i, h(i)] | i in I}.
    """
    mapping = {}
    for I in subsets(h.domain):
        if coupled:
            mapping[I] = FinSet(frozenset(Pair(i, apply_individual(h, i)) for i in I))
        else:
            mapping[I] = FinSet(frozenset(apply_individual(h, i) for i in I))
    return Concept.from_map(mapping)


@dataclass(frozen=True)
class Recovery:
    slices: dict
    recoverable: bool

    def graph(self, coupled: Optional[bool] = None) -> Graph:
        """The individual read off singleton slices.

        ``coupled`` says whether slice members are ``[i, h(i)]`` pairs; by
        default that is detected from the slices themselves.
        """
        if not self.recoverable:
            raise ValueError("slices are not all singletons")
        picks = {i: next(iter(s)) for i, s in self.slices.items()}
        if coupled is None:
            coupled = all(isinstance(v, Pair) and v.first == i for i, v in picks.items())
        return Graph(frozenset((i, v.second if coupled else v) for i, v in picks.items()))


def recover_individual(c: Concept, probe: Iterable) -> Recovery:
    slices, ok = {}, True
    for i in probe:
        try:
            s = c.at(FinSet.of(i))
        except UndefinedAt:
            ok = False
            continue
        slices[i] = s
        ok = ok and len(s) == 1
    return Recovery(slices, ok)


def interchange_check(h: Individual, u: Universe, J: Optional[Graph] = None) -> bool:
    """[i, h(i)] == <J, h> i for every i in the domain; J defaults to the identity."""
    J = diagonal(h.domain) if J is None else J
    coupled = couple(J, h.graph)
    for i in h.domain:
        left = Pair(i, apply_individual(h, i))
        images = coupled.images(i)
        if images != [left]:
            return False
    return True
