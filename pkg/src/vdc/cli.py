"""Command-line front end: ``vdc eval|check|concepts|layers|replay|parse``.

Exit codes depend only on the outcome class: 0 for success, 1 for errors
and failed checks, 2 when a term is improper or undefined at the event asked
for. ``--format structured`` prints one JSON object per line; the table and
the structured form are rendered from the same records.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .checks import SUITES, run_suite
from .concepts import (TypeFree, Typed, build_concept, interchange_check, individual_concept,
                       recover_individual)
from .errors import Improper, StepFailed, Undefined, VdcError
from .evaluator import EvalContext, eval_at, eval_global
from .formats import load_script, load_universe
from .layers import LayeredStore, comprehend_layer, render_tower
from .parser import parse_term
from .scripts import StoreState, run_script
from .sorts import sort_check
from .syntax import show, show_sort
from .universe import DEFAULT_CAP, check_taxonomy
from .values import Atom, FinSet, sort_key

OK, ERROR, PARTIAL = 0, 1, 2


class Output:
    """Collects records and prints them as a table or as JSON lines."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict, line: str) -> None:
        if self.fmt == "structured":
            print(json.dumps(record, ensure_ascii=False), file=self.stream)
        else:
            print(line, file=self.stream)


def _items(s: FinSet) -> list[str]:
    return [str(v) for v in sorted(s, key=sort_key)]


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("VDC_SEED", "0"))


# -- eval ---------------------------------------------------------------------------


def cmd_eval(args, out: Output) -> int:
    u = load_universe(args.universe)
    t = parse_term(args.term)
    sort = sort_check(t, None, u)
    if args.at == "all":
        g = eval_global(t, u, cap=args.cap)
        for i in sorted(u.asg, key=sort_key):
            images = g.images(i)
            value = str(images[0]) if images else None
            out.emit({"kind": "eval", "event": str(i), "status": "ok" if images else "undefined",
                      "value": value},
                     f"{i}: {value if images else '-'}")
        out.emit({"kind": "graph", "sort": show_sort(sort), "value": str(g)}, f"graph: {g}")
        return OK
    event = Atom(args.at)
    if event not in u.asg:
        raise VdcError(f"event {event} is not declared")
    try:
        v = eval_at(t, EvalContext(u, event, cap=args.cap))
    except Improper as e:
        out.emit({"kind": "eval", "event": str(event), "status": "improper",
                  "candidates": _items(e.candidates)}, f"improper: {e.candidates}")
        return PARTIAL
    except Undefined as e:
        out.emit({"kind": "eval", "event": str(event), "status": "undefined",
                  "reason": e.reason}, f"undefined: {e.reason}")
        return PARTIAL
    out.emit({"kind": "eval", "event": str(event), "status": "ok", "value": str(v)}, str(v))
    return OK


# -- check ---------------------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    u = load_universe(args.universe)
    opts = {"cap": args.cap}
    if args.count is not None:
        opts["count"] = args.count
    if args.suite == "layers":
        opts["max_depth"] = args.max_depth
    results = run_suite(args.suite, u, seed=_seed(args), **opts)
    failed = False
    for r in results:
        failed = failed or not r.passed
        detail = r.witness and f"witness: {r.witness}" or r.skipped or ""
        line = f"{r.verdict():4}  {r.name}  ({r.checked} checked)"
        out.emit({"kind": "property", "suite": r.suite, "property": r.name,
                  "verdict": r.verdict().lower(), "checked": r.checked,
                  "witness": r.witness, "skipped": r.skipped},
                 line + (f"  {detail}" if detail else ""))
    return ERROR if failed else OK


# -- concepts -------------------------------------------------------------------------


def _scheme(text: str, u):
    if text == "typefree":
        return TypeFree()
    if text.startswith("typed:"):
        return Typed(u.type(text.split(":", 1)[1]))
    raise VdcError(f"scheme must be 'typefree' or 'typed:T', not {text!r}")


def cmd_concepts(args, out: Output) -> int:
    u = load_universe(args.universe)
    scheme = _scheme(args.scheme, u)
    c = build_concept(scheme, u, args.cap, declared_only=args.declared_only)
    for I, slice_ in c.slices().items():
        out.emit({"kind": "slice", "scheme": str(scheme), "events": _items(I),
                  "members": _items(slice_)}, f"{I}  ->  {slice_}")
    for name, h in sorted(u.individuals.items()):
        rec = recover_individual(individual_concept(h, coupled=True), h.domain)
        graph = str(rec.graph()) if rec.recoverable else None
        swap = interchange_check(h, u)
        out.emit({"kind": "individual", "name": name, "recoverable": rec.recoverable,
                  "graph": graph, "interchange": swap},
                 f"{name}: recovered {graph if graph else 'no'}, "
                 f"[i, h(i)] = <J, h>i {'holds' if swap else 'fails'}")
    return OK


# -- layers ---------------------------------------------------------------------------


def cmd_layers(args, out: Output) -> int:
    u = load_universe(args.universe)
    names = sorted(n for n in u.types if n != "bool")
    base = args.base or (names[0] if names else None)
    if base is None:
        raise VdcError("the universe declares no type to use as the base domain")
    store = LayeredStore(u.type(base), max_depth=args.max_depth)
    events = sorted(u.asg, key=sort_key)
    event = Atom(args.at) if args.at not in (None, "all") else (events[0] if events else None)
    ctx = EvalContext(u, event, cap=args.cap)
    for step in args.steps:
        j_text, _, formula = step.partition(":")
        if not j_text.strip().isdigit() or not formula:
            raise VdcError(f"layer step must look like 'J:formula', not {step!r}")
        comprehend_layer(store, int(j_text), "h", parse_term(formula), ctx)
    if args.format == "structured":
        for layer in store.layers:
            out.emit({"kind": "layer", "index": layer.index,
                      "entities": _items(layer.entities)}, "")
    else:
        out.emit({}, render_tower(store))
    return OK


# -- replay ---------------------------------------------------------------------------


def cmd_replay(args, out: Output) -> int:
    u = load_universe(args.universe)
    script = load_script(args.script)
    try:
        final = run_script(StoreState(), script, u)
        failure: Optional[StepFailed] = None
    except StepFailed as e:
        final, failure = e.last_state, e
    if args.format != "structured":
        print(f"{'step':>4}  {'event':6}  {'entered':12}  {'left':12}  live", file=out.stream)
    for n, entry in enumerate(final.history, 1):
        out.emit({"kind": "step", "step": n, "event": str(entry.event),
                  "entered": _items(entry.entered), "left": _items(entry.left),
                  "live": _items(entry.live)},
                 f"{n:>4}  {str(entry.event):6}  {str(entry.entered):12}  "
                 f"{str(entry.left):12}  {entry.live}")
    for n, v in final.reentries:
        out.emit({"kind": "reentry", "step": n + 1, "value": str(v)},
                 f"note: {v} re-enters at step {n + 1}")
    if failure is not None:
        step = script.steps[failure.step - 1]
        out.emit({"kind": "error", "step": failure.step, "event": str(step.event),
                  "message": str(failure.cause)},
                 f"{failure.step:>4}  {str(step.event):6}  {str(step.enters):12}  "
                 f"{str(step.leaves):12}  error: {failure.cause}")
        print(f"error: step {failure.step}: {failure.cause}", file=sys.stderr)
        return ERROR
    report = check_taxonomy(final.universe(u), lifted=False)
    live_ok = final.live <= u.possible
    verdict = "pass" if report.ok and live_ok else "fail"
    out.emit({"kind": "final", "live": _items(final.live), "taxonomy": verdict},
             f"final live: {final.live}\ntaxonomy: {verdict}")
    return OK if verdict == "pass" else ERROR


# -- parse ----------------------------------------------------------------------------


def cmd_parse(args, out: Output) -> int:
    t = parse_term(args.term)
    record = {"kind": "term", "term": show(t)}
    line = show(t)
    if args.universe:
        sort = show_sort(sort_check(t, None, load_universe(args.universe)))
        record["sort"] = sort
        line += f" : {sort}"
    out.emit(record, line)
    return OK


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-u", "--universe", help="universe file")
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomised checks (falls back to VDC_SEED)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--max-depth", type=int, default=2, help="layer depth cap")

    p = argparse.ArgumentParser(prog="vdc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a term")
    e.add_argument("--at", default="all", help="an event name, or 'all' for the whole graph")
    e.add_argument("term")
    e.set_defaults(run=cmd_eval, needs_universe=True)

    c = sub.add_parser("check", parents=[common], help="run a property suite")
    c.add_argument("suite", choices=SUITES)
    c.add_argument("--count", type=int, default=None, help="random cases to generate")
    c.set_defaults(run=cmd_check, needs_universe=True)

    k = sub.add_parser("concepts", parents=[common], help="build a concept")
    k.add_argument("--scheme", default="typefree", help="'typefree' or 'typed:T'")
    k.add_argument("--declared-only", action="store_true",
                   help="only singletons, Asg and individuals' domains as event sets")
    k.set_defaults(run=cmd_concepts, needs_universe=True)

    lay = sub.add_parser("layers", parents=[common], help="build a layer tower")
    lay.add_argument("--base", default=None, help="type used as layer 0 (default: first)")
    lay.add_argument("--at", default=None, help="event to evaluate at (default: first)")
    lay.add_argument("steps", nargs="*", help="'J:formula' with free variable h")
    lay.set_defaults(run=cmd_layers, needs_universe=True)

    r = sub.add_parser("replay", parents=[common], help="run a script")
    r.add_argument("script")
    r.set_defaults(run=cmd_replay, needs_universe=True)

    q = sub.add_parser("parse", parents=[common], help="parse and print a term")
    q.add_argument("term")
    q.set_defaults(run=cmd_parse, needs_universe=False)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.needs_universe and not args.universe:
        parser.error(f"{args.command} needs -u/--universe")
    out = Output(args.format)
    try:
        return args.run(args, out)
    except (VdcError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
