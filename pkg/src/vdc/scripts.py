"""Scripts: sequences of events that move individuals in and out of existence.

A store state records the live set, the per-event actual sets it has
produced, and an append-only history of every step. Running a script is a
left fold of :func:`apply_event`; nothing here mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import (NotLive, NotPossible, OutOfRange, ScriptError, StepFailed,
                     Undefined, UnknownEvent)
from .universe import Individual, Universe, apply_individual
from .values import FinSet, Graph, apply_graph

EMPTY = FinSet(frozenset())


@dataclass(frozen=True)
class EventStep:
    event: object
    enters: FinSet = EMPTY
    leaves: FinSet = EMPTY

    def __post_init__(self):
        both = self.enters.elements & self.leaves.elements
        if both:
            raise ValueError(f"{FinSet(both)} both enter and leave at {self.event}")


@dataclass(frozen=True)
class Script:
    steps: tuple = ()

    def __len__(self) -> int:
        return len(self.steps)

    def events(self) -> list:
        return [s.event for s in self.steps]


@dataclass(frozen=True)
class HistoryEntry:
    event: object
    entered: FinSet
    left: FinSet
    live: FinSet


@dataclass(frozen=True)
class StoreState:
    at: Optional[object] = None
    live: FinSet = EMPTY
    history: tuple = ()
    actual: Mapping = field(default_factory=dict)
    departed: frozenset = frozenset()
    reentries: tuple = ()

    def universe(self, u: Universe) -> Universe:
        """``u`` with each U_i replaced by the live set this run recorded for i."""
        return u.with_actual({**u.actual, **self.actual})


def apply_event(s: StoreState, step: EventStep, u: Universe) -> StoreState:
    if step.event not in u.asg:
        raise UnknownEvent(step.event)
    for v in step.enters:
        if v not in u.possible:
            raise NotPossible(v)
    for v in step.leaves:
        if v not in s.live:
            raise NotLive(v)
    live = FinSet((s.live.elements - step.leaves.elements) | step.enters.elements)
    back = [v for v in step.enters if v in s.departed and v not in s.live]
    n = len(s.history)
    return StoreState(
        at=step.event,
        live=live,
        history=s.history + (HistoryEntry(step.event, step.enters, step.leaves, live),),
        actual={**s.actual, step.event: live},  # a repeated event overwrites U_i
        departed=s.departed | step.leaves.elements,
        reentries=s.reentries + tuple((n, v) for v in back),
    )


def run_script(s0: StoreState, script: Script, u: Universe) -> StoreState:
    """Fold the steps over ``s0``; a failing step raises StepFailed with its
    1-based number and the last good state."""
    s = s0
    for k, step in enumerate(script.steps):
        try:
            s = apply_event(s, step, u)
        except ScriptError as e:
            raise StepFailed(k + 1, e, s) from e
    return s


def snapshot_at(s: StoreState, n: int) -> tuple:
    if not 0 <= n < len(s.history):
        raise OutOfRange(f"history has {len(s.history)} entries, asked for {n}")
    entry = s.history[n]
    return entry.event, entry.live


def replay_deltas(initial: FinSet, history: Iterable[HistoryEntry]) -> FinSet:
    """Rebuild the live set from the enter/leave deltas alone."""
    live = set(initial.elements)
    for entry in history:
        live -= entry.left.elements
        live |= entry.entered.elements
    return FinSet(frozenset(live))


@dataclass(frozen=True)
class TraceEntry:
    event: object
    value: Optional[object] = None
    nested: Optional[object] = None
    reason: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.reason is None


def trace_individual(h: Individual, script: Script) -> list[TraceEntry]:
    """h(i) at each step's event, plus h(i)(j) when h(i) is itself a graph
    and a following step supplies j."""
    events = script.events()
    out = []
    for k, i in enumerate(events):
        try:
            v = apply_individual(h, i)
        except Undefined as e:
            out.append(TraceEntry(i, reason=e.reason))
            continue
        nested = None
        if isinstance(v, Graph) and k + 1 < len(events):
            try:
                nested = apply_graph(v, events[k + 1])
            except Undefined:
                nested = None
        out.append(TraceEntry(i, v, nested))
    return out
