"""Property suites run by ``vdc check``.

Each suite takes a universe and returns one :class:`PropertyResult` per
property, carrying the number of cases examined and the first witness of a
failure. Randomised suites draw everything from a seeded ``random.Random``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .concepts import subsets
from .errors import DepthExceeded, Improper, TooLarge, Undefined
from .evaluator import (EvalContext, check_eta, eval_at, eval_comprehension, eval_global,
                        eval_in_index, eval_via_epsilon)
from .generate import TermGen, formula_pool, random_layer_program
from .layers import LayeredStore, check_layer_taxonomy, comprehend_layer, layer_sort
from .sorts import sort_check, sort_domain
from .syntax import (App, Base, Compr, Const, Lam, Member, PairT, Var, free_vars, show,
                     subst, subterms)
from .universe import (DEFAULT_CAP, Universe, VariableDomain, check_taxonomy,
                       enumerate_domain)
from .values import TRUE, FinSet, apply_graph, couple, sort_key

SUITES = ("taxonomy", "rules", "eta", "figure3", "layers")


@dataclass
class PropertyResult:
    suite: str
    name: str
    checked: int = 0
    witness: Optional[str] = None
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def fail(self, witness: str) -> None:
        if self.witness is None:
            self.witness = witness

    def verdict(self) -> str:
        if self.witness is not None:
            return "FAIL"
        return "SKIP" if self.skipped and not self.checked else "PASS"


def outcome(thunk: Callable) -> tuple:
    """('ok', v), ('undefined', reason) or ('improper', candidates)."""
    try:
        return ("ok", thunk())
    except Improper as e:
        return ("improper", e.candidates)
    except Undefined:
        return ("undefined", None)


def _show_outcome(o: tuple) -> str:
    kind, v = o
    return kind if v is None else f"{kind} {v}"


# -- taxonomy ---------------------------------------------------------------------


def taxonomy_suite(u: Universe, cap: int = DEFAULT_CAP, **_) -> list[PropertyResult]:
    report = check_taxonomy(u, min(cap, 2 ** 12))
    out = []
    for rule in dict.fromkeys(report.checked):
        r = PropertyResult("taxonomy", rule, checked=1)
        for v in report.violations:
            if v.rule == rule:
                r.fail(str(v.witness))
        out.append(r)
    out += [PropertyResult("taxonomy", s, skipped="over the enumeration cap")
            for s in report.skipped]
    return out


# -- evaluation rules --------------------------------------------------------------


def _closed(t, u: Universe) -> bool:
    return free_vars(t) <= set(u.individuals)


def rules_suite(u: Universe, rng: random.Random, count: int = 200,
                cap: int = DEFAULT_CAP, **_) -> list[PropertyResult]:
    gen = TermGen(u, rng)
    sorted_ = PropertyResult("rules", "generated terms are well sorted")
    r1 = PropertyResult("rules", "rule1: application of values")
    r2 = PropertyResult("rules", "rule2: pairs couple")
    r3 = PropertyResult("rules", "rule3: environment == index pairing")
    r3b = PropertyResult("rules", "rule3: redex == body at [i, d]")
    r4 = PropertyResult("rules", "rule4 == rule1")
    r5 = PropertyResult("rules", "rule5: constants ignore the event")
    events = list(u.asg)
    for _ in range(count):
        t = gen.app_term() if rng.random() < 0.5 else gen.term()
        try:
            sort_check(t, None, u)
        except Exception as e:
            sorted_.fail(f"{show(t)}: {e}")
            continue
        sorted_.checked += 1
        try:
            g_env = eval_global(t, u, cap=cap)
        except TooLarge:
            continue
        r3.checked += 1
        g_idx = eval_global(t, u, binding="index", cap=cap)
        if g_env != g_idx:
            r3.fail(f"{show(t)}: env {g_env} vs index {g_idx}")
        if isinstance(t, App):
            r4.checked += 1
            g_eps = eval_via_epsilon(t, u, cap=cap)
            if g_eps != g_env:
                r4.fail(f"{show(t)}: epsilon {g_eps} vs global {g_env}")
        for s in subterms(t):
            if not _closed(s, u):
                continue
            if isinstance(s, App):
                _rule1(s, u, events, cap, r1)
            if isinstance(s, PairT):
                r2.checked += 1
                whole = eval_global(s, u, cap=cap)
                parts = couple(eval_global(s.l, u, cap=cap), eval_global(s.r, u, cap=cap))
                if whole != parts:
                    r2.fail(f"{show(s)}: {whole} vs {parts}")
            if isinstance(s, Lam):
                _rule3_redex(s, u, events, cap, r3b)
        if not free_vars(t) and events:
            r5.checked += 1
            first = outcome(lambda: eval_at(t, EvalContext(u, events[0], cap=cap)))
            for i in events[1:]:
                other = outcome(lambda: eval_at(t, EvalContext(u, i, cap=cap)))
                if other != first:
                    r5.fail(f"{show(t)}: {_show_outcome(first)} at {events[0]}, "
                            f"{_show_outcome(other)} at {i}")
    return [sorted_, r1, r2, r3, r3b, r4, r5]


def _rule1(t: App, u: Universe, events, cap: int, r: PropertyResult) -> None:
    for i in events:
        ctx = EvalContext(u, i, cap=cap)
        r.checked += 1
        whole = outcome(lambda: eval_at(t, ctx))

        def manual():
            f = eval_at(t.fn, ctx)
            a = eval_at(t.arg, ctx)
            return apply_graph(f, a)

        parts = outcome(manual)
        if whole != parts:
            r.fail(f"{show(t)} at {i}: {_show_outcome(whole)} vs {_show_outcome(parts)}")


def _rule3_redex(lam: Lam, u: Universe, events, cap: int, r: PropertyResult) -> None:
    for d in sort_domain(lam.sort, u, cap):
        for i in events:
            ctx = EvalContext(u, i, cap=cap)
            r.checked += 1
            redex = outcome(lambda: eval_at(App(lam, Const(d)), ctx))
            body = outcome(lambda: eval_in_index(lam.body, lam.var, d, ctx))
            # the lambda's graph leaves out points where the body has no value
            expected = body if body[0] == "ok" else ("undefined", None)
            if redex != expected:
                r.fail(f"{show(lam)} at {i} on {d}: {_show_outcome(redex)} vs "
                       f"{_show_outcome(body)}")


# -- eta -----------------------------------------------------------------------------


def eta_suite(u: Universe, cap: int = DEFAULT_CAP, limit: int = 64, **_) -> list[PropertyResult]:
    declared = PropertyResult("eta", "declared individuals: graph(\\i. h(i)) = graph(h)")
    for name, h in sorted(u.individuals.items()):
        declared.checked += 1
        g = eval_global(Var(name), u, cap=cap)
        if g != h.graph:
            declared.fail(f"{name}: {g} vs {h.graph}")
        ctx = EvalContext(u, None, cap=cap)
        if not check_eta(h.graph, Const(h.graph), ctx):
            declared.fail(f"{name}: eta expansion of {h.graph} differs")
    enumerated = PropertyResult("eta", f"enumerated H_T(I) with |T|^|I| <= {limit}")
    for tname, T in sorted(u.types.items()):
        for I in subsets(u.asg, cap):
            if len(T) ** len(I) > limit:
                continue
            for h in enumerate_domain(VariableDomain(I, T), cap):
                enumerated.checked += 1
                ctx = EvalContext(u, None, cap=cap)
                if not check_eta(h.graph, Const(h.graph), ctx):
                    enumerated.fail(f"{tname} over {I}: {h.graph}")
    return [declared, enumerated]


# -- the chain C({i}) <= H_T({i}) <= T <= H ------------------------------------------------


def slice_chain_suite(u: Universe, rng: random.Random, count: int = 100,
                  cap: int = DEFAULT_CAP, **_) -> list[PropertyResult]:
    c_in_slice = PropertyResult("figure3", "C({i}) <= H_T({i})")
    slice_in_t = PropertyResult("figure3", "H_T({i}) <= T")
    t_in_h = PropertyResult("figure3", "T <= H")
    names = sorted(n for n in u.types if n != "bool")
    events = list(u.asg)
    if not names or not events:
        return [PropertyResult("figure3", "chain", skipped="needs a type and an event")]
    for tname in names:
        t_in_h.checked += 1
        for v in u.type(tname).members:
            if v not in u.possible:
                t_in_h.fail(f"{v} in {tname} but not in H")
    attempts = 0
    while c_in_slice.checked < count and attempts < 10 * count:
        attempts += 1
        tname = rng.choice(names)
        T = u.type(tname)
        i = rng.choice(events)
        phi = formula_pool(u, rng, 5, "y", tname)[rng.randrange(5)]
        ctx = EvalContext(u, i, cap=cap)
        try:
            C = eval_comprehension(Compr("y", Base(tname), phi), ctx)
        except (Undefined, Improper):
            continue
        slice_ = FinSet(frozenset(h.graph.images(i)[0]
                                  for h in enumerate_domain(VariableDomain(FinSet.of(i), T), cap)))
        c_in_slice.checked += 1
        slice_in_t.checked += 1
        for v in C:
            if v not in slice_:
                c_in_slice.fail(f"{v} at {i} for {show(phi)}")
        for v in slice_:
            if v not in T:
                slice_in_t.fail(f"{v} at {i}")
    return [c_in_slice, slice_in_t, t_in_h]


# -- layers ---------------------------------------------------------------------------------


def brute_filter(u: Universe, base: str, j: int, var: str, phi, event, cap: int) -> FinSet:
    """The layer-j values satisfying ``phi``, found by substituting each one."""
    keep = []
    for c in sort_domain(layer_sort(base, j), u, cap):
        if eval_at(subst(phi, var, Const(c)), EvalContext(u, event, cap=cap)) == TRUE:
            keep.append(c)
    return FinSet(frozenset(keep))


def layers_suite(u: Universe, rng: random.Random, count: int = 20, max_depth: int = 2,
                 cap: int = DEFAULT_CAP, base: Optional[str] = None, **_) -> list[PropertyResult]:
    names = sorted(n for n in u.types if n != "bool")
    events = sorted(u.asg, key=sort_key)
    if not names or not events:
        return [PropertyResult("layers", "closure", skipped="needs a type and an event")]
    base = base or names[0]
    closed = PropertyResult("layers", "layer taxonomy holds after every comprehension")
    sound = PropertyResult("layers", "entity equals the brute-force filter")
    capped = PropertyResult("layers", f"no entity beyond depth {max_depth}")
    round_trip = PropertyResult("layers", "membership in an entity reproduces it")
    for _ in range(count):
        store = LayeredStore(u.type(base), max_depth=max_depth)
        event = rng.choice(events)
        ctx = EvalContext(u, event, cap=cap)
        for j, var, phi in random_layer_program(u, rng, base, 10, max_depth):
            try:
                layer = comprehend_layer(store, j, var, phi, ctx)
                expected = brute_filter(u, base, j, var, phi, event, cap)
            except (Undefined, Improper, TooLarge):
                continue
            sound.checked += 1
            if expected not in layer.entities:
                sound.fail(f"{show(phi)} at layer {j}: expected {expected}")
            closed.checked += 1
            for v in check_layer_taxonomy(store):
                closed.fail(str(v))
            probe = LayeredStore(u.type(base), max_depth=max_depth)
            comprehend_layer(probe, j, var, Member(Var(var), Const(expected)), ctx)
            round_trip.checked += 1
            if probe.layer(j + 1).entities != FinSet.of(expected):
                round_trip.fail(f"{expected} at layer {j + 1}")
        capped.checked += 1
        try:
            comprehend_layer(store, max_depth, "h", Const(TRUE), ctx)
            capped.fail(f"comprehension at layer {max_depth} was accepted")
        except DepthExceeded:
            pass
        if len(store.layers) > max_depth + 1:
            capped.fail(f"{len(store.layers)} layers present")
    return [closed, sound, capped, round_trip]


def run_suite(name: str, u: Universe, seed: int = 0, **opts) -> list[PropertyResult]:
    rng = random.Random(seed)
    if name == "taxonomy":
        return taxonomy_suite(u, **opts)
    if name == "rules":
        return rules_suite(u, rng, **opts)
    if name == "eta":
        return eta_suite(u, **opts)
    if name == "figure3":
        return slice_chain_suite(u, rng, **opts)
    if name == "layers":
        return layers_suite(u, rng, **opts)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
