"""The finite semantic universe: atoms, booleans, pairs, sets and graphs.

Every value is immutable and hashable, and structural equality is the only
identity. Events and states are ordinary values, so a graph may map events to
graphs and nested application ``h(i)(j)`` needs no extra machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotApplicable, Undefined


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Bool:
    b: bool

    def __str__(self) -> str:
        return "true" if self.b else "false"


@dataclass(frozen=True, slots=True)
class Pair:
    first: "Value"
    second: "Value"

    def __str__(self) -> str:
        return f"[{self.first}, {self.second}]"


@dataclass(frozen=True, slots=True)
class FinSet:
    elements: frozenset

    def __iter__(self) -> Iterator["Value"]:
        return iter(sorted(self.elements, key=sort_key))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return v in self.elements

    def __le__(self, other: "FinSet") -> bool:
        return self.elements <= other.elements

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self) + "}"

    @classmethod
    def of(cls, *values: "Value") -> "FinSet":
        return cls(frozenset(values))

    @classmethod
    def from_iter(cls, values: Iterable["Value"]) -> "FinSet":
        return cls(frozenset(values))


@dataclass(frozen=True, slots=True)
class Graph:
    """A set of argument/image pairs. Functionality is checked, not assumed."""

    pairs: frozenset

    def __iter__(self) -> Iterator[tuple["Value", "Value"]]:
        return iter(sorted(self.pairs, key=lambda p: (sort_key(p[0]), sort_key(p[1]))))

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "{:}"
        return "{" + ", ".join(f"{x}: {y}" for x, y in self) + "}"

    def images(self, x: "Value") -> list["Value"]:
        return [y for a, y in self.pairs if a == x]

    def domain(self) -> frozenset:
        return frozenset(a for a, _ in self.pairs)

    def range(self) -> frozenset:
        return frozenset(y for _, y in self.pairs)

    def is_functional(self) -> bool:
        return len(self.domain()) == len(self.pairs)

    def restrict(self, xs) -> "Graph":
        return Graph(frozenset(p for p in self.pairs if p[0] in xs))

    @classmethod
    def of(cls, mapping: Mapping["Value", "Value"]) -> "Graph":
        return cls(frozenset(mapping.items()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple["Value", "Value"]]) -> "Graph":
        return cls(frozenset(pairs))


Value = Union[Atom, Bool, Pair, FinSet, Graph]

TRUE = Bool(True)
FALSE = Bool(False)
BOOLS = FinSet.of(FALSE, TRUE)


def atom(name: str) -> Atom:
    return Atom(name)


def atoms(names: str) -> list[Atom]:
    """``atoms("a b c")`` -> three atoms, in order."""
    return [Atom(n) for n in names.split()]


def sort_key(v) -> tuple:
    """Total order on values, used only for deterministic output."""
    if isinstance(v, Atom):
        return (0, v.name)
    if isinstance(v, Bool):
        return (1, v.b)
    if isinstance(v, Pair):
        return (2, sort_key(v.first), sort_key(v.second))
    if isinstance(v, FinSet):
        return (3, len(v.elements), tuple(sorted(sort_key(e) for e in v.elements)))
    if isinstance(v, Graph):
        return (4, len(v.pairs),
                tuple(sorted((sort_key(a), sort_key(b)) for a, b in v.pairs)))
    raise TypeError(f"not a value: {v!r}")


def is_value(v) -> bool:
    return isinstance(v, (Atom, Bool, Pair, FinSet, Graph))


# -- graph operations -------------------------------------------------------------


def apply_graph(g, x):
    """The unique image of ``x`` under ``g``; ``Undefined`` when there is none."""
    if not isinstance(g, Graph):
        raise NotApplicable(g)
    ys = g.images(x)
    if len(ys) == 1:
        return ys[0]
    if not ys:
        raise Undefined(f"{x} is outside the domain of {g}")
    raise Undefined(f"graph is not functional at {x}")


def couple(f: Graph, g: Graph) -> Graph:
    """The coupling <f, g>: x maps to [f x, g x] wherever both are defined."""
    out = []
    for x in f.domain() & g.domain():
        fx, gx = f.images(x), g.images(x)
        if len(fx) == 1 and len(gx) == 1:
            out.append((x, Pair(fx[0], gx[0])))
    return Graph(frozenset(out))


def compose(outer: Graph, inner: Graph) -> Graph:
    """outer after inner, partial on both sides."""
    out = []
    for x, y in inner.pairs:
        zs = outer.images(y)
        if len(zs) == 1:
            out.append((x, zs[0]))
    return Graph(frozenset(out))


def diagonal(xs: Iterable) -> Graph:
    """The identity map on ``xs``."""
    return Graph(frozenset((x, x) for x in xs))
