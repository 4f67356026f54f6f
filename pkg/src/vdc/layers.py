"""A tower of layers built by comprehension over a base domain D.

Layer 0 holds the members of D. Comprehending at layer ``j`` lets a variable
range over the j-fold power sort of D and adds the resulting set, as a single
entity, to layer ``j + 1``. Concepts of one layer are thereby individuals of
the next.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import DepthExceeded
from .evaluator import EvalContext, eval_comprehension
from .sorts import sort_check
from .syntax import Base, Compr, Power
from .universe import TypeDenotation
from .values import FinSet

DEFAULT_MAX_DEPTH = 2


@dataclass(frozen=True)
class Layer:
    index: int
    entities: FinSet


@dataclass
class LayeredStore:
    base: TypeDenotation
    layers: list = field(default_factory=list)
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if not self.layers:
            self.layers.append(Layer(0, self.base.members))

    def layer(self, j: int) -> Layer:
        if j < len(self.layers):
            return self.layers[j]
        return Layer(j, FinSet(frozenset()))

    def snapshot(self) -> tuple:
        return tuple(self.layers)


def layer_sort(base: str, j: int):
    s = Base(base)
    for _ in range(j):
        s = Power(s)
    return s


def in_layer_space(v, store: LayeredStore, j: int) -> bool:
    """Whether ``v`` inhabits the j-fold power sort of the base domain."""
    if j == 0:
        return v in store.base.members
    return isinstance(v, FinSet) and all(in_layer_space(e, store, j - 1) for e in v.elements)


def comprehend_layer(store: LayeredStore, j: int, var: str, phi, ctx: EvalContext,
                     sorts: Optional[Mapping] = None) -> Layer:
    """Add { var : layer-j sort | phi } to layer j + 1 and return that layer."""
    if j < 0 or j + 1 > store.max_depth:
        raise DepthExceeded(j + 1, store.max_depth)
    term = Compr(var, layer_sort(store.base.name, j), phi)
    sort_check(term, sorts, ctx.universe)
    entity = eval_comprehension(term, ctx)
    while len(store.layers) <= j + 1:
        store.layers.append(Layer(len(store.layers), FinSet(frozenset())))
    updated = Layer(j + 1, FinSet(store.layers[j + 1].entities.elements | {entity}))
    store.layers[j + 1] = updated
    return updated


@dataclass(frozen=True)
class LayerRole:
    layer: int
    states: str
    concepts: str
    event_assignments: str
    world_assignments: str


_ROLES = {
    0: LayerRole(0, "roles", "types", "frames", "data base"),
    1: LayerRole(1, "individuals of layer 0", "meta-1 notions", "meta-1 frames",
                 "knowledge base"),
    2: LayerRole(2, "concepts (individuals of layer 1)", "meta-2 notions",
                 "meta-2 frames", "metaknowledge base"),
}


def layer_role(j: int) -> LayerRole:
    if j not in _ROLES:
        raise DepthExceeded(j, 2)
    return _ROLES[j]


@dataclass(frozen=True)
class LayerViolation:
    layer: int
    witness: object

    def __str__(self) -> str:
        return f"layer {self.layer}: witness {self.witness}"


def check_layer_taxonomy(store: LayeredStore) -> list[LayerViolation]:
    """Every layer-(j+1) entity must be a subset of the layer-j entity space."""
    out = []
    for layer in store.layers:
        if layer.index > store.max_depth:
            out += [LayerViolation(layer.index, e) for e in layer.entities]
            continue
        for e in layer.entities:
            if not in_layer_space(e, store, layer.index):
                out.append(LayerViolation(layer.index, e))
    return out


def render_tower(store: LayeredStore) -> str:
    lines = []
    for layer in store.layers:
        role = layer_role(layer.index).world_assignments if layer.index in _ROLES else ""
        lines.append(f"layer {layer.index} ({role}):")
        for e in layer.entities:
            lines.append(f"  {e}")
    return "\n".join(lines)
