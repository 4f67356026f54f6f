"""Sort checking and the finite carrier of every sort."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import SortMismatch, TooLarge, UnboundVariable
from .syntax import (BOOL, And, App, Apply, Arrow, Base, BoolSort, Compr, Const, Couple,
                     Desc, Eq, Exists, Forall, Iff, Implies, Lam, Member, Not, Or, PairT,
                     Power, Prod, Var, show)
from .universe import DEFAULT_CAP, Universe
from .values import Bool, FinSet, Graph, Pair


@dataclass(frozen=True)
class _Lit:
    """Provisional sort of a bare constant; fixed by whatever it meets."""

    v: object


def well_formed(s, u: Universe) -> None:
    if isinstance(s, Base):
        u.type(s.name)
    elif isinstance(s, Power):
        well_formed(s.inner, u)
    elif isinstance(s, Prod):
        well_formed(s.l, u)
        well_formed(s.r, u)
    elif isinstance(s, Arrow):
        well_formed(s.dom, u)
        well_formed(s.cod, u)


def sort_contains(s, v, u: Universe) -> bool:
    if isinstance(s, Base):
        return v in u.type(s.name)
    if isinstance(s, BoolSort):
        return isinstance(v, Bool)
    if isinstance(s, Prod):
        return isinstance(v, Pair) and sort_contains(s.l, v.first, u) \
            and sort_contains(s.r, v.second, u)
    if isinstance(s, Power):
        return isinstance(v, FinSet) and all(sort_contains(s.inner, e, u) for e in v.elements)
    if isinstance(s, Arrow):
        return isinstance(v, Graph) and v.is_functional() and all(
            sort_contains(s.dom, x, u) and sort_contains(s.cod, y, u) for x, y in v.pairs)
    raise TypeError(f"not a sort: {s!r}")


def sort_size(s, u: Universe) -> int:
    if isinstance(s, Base):
        return len(u.type(s.name))
    if isinstance(s, BoolSort):
        return 2
    if isinstance(s, Prod):
        return sort_size(s.l, u) * sort_size(s.r, u)
    if isinstance(s, Power):
        return 2 ** sort_size(s.inner, u)
    if isinstance(s, Arrow):
        return sort_size(s.cod, u) ** sort_size(s.dom, u)
    raise TypeError(f"not a sort: {s!r}")


def sort_domain(s, u: Universe, cap: int = DEFAULT_CAP) -> list:
    """Every value of sort ``s``, in a fixed order; arrows give total maps only."""
    n = sort_size(s, u)
    if n > cap:
        raise TooLarge(n, cap)
    return _domain(s, u)


def _domain(s, u: Universe) -> list:
    if isinstance(s, Base):
        return list(u.type(s.name).members)
    if isinstance(s, BoolSort):
        return [Bool(False), Bool(True)]
    if isinstance(s, Prod):
        return [Pair(a, b) for a in _domain(s.l, u) for b in _domain(s.r, u)]
    if isinstance(s, Power):
        base = _domain(s.inner, u)
        subsets = itertools.chain.from_iterable(
            itertools.combinations(base, k) for k in range(len(base) + 1))
        return [FinSet(frozenset(c)) for c in subsets]
    if isinstance(s, Arrow):
        dom, cod = _domain(s.dom, u), _domain(s.cod, u)
        return [Graph(frozenset(zip(dom, images)))
                for images in itertools.product(cod, repeat=len(dom))]
    raise TypeError(f"not a sort: {s!r}")


def individual_sorts(u: Universe) -> dict:
    return {name: Base(h.codomain.name) for name, h in u.individuals.items()}


# -- checking ----------------------------------------------------------------------


def sort_check(t, ctx: Optional[Mapping] = None, u: Universe = None):
    """The sort of ``t`` under ``ctx`` (free variable -> sort).

    Names the context does not cover fall back to the universe's declared
    individuals, whose sort is their codomain type.
    """
    env = {**individual_sorts(u), **dict(ctx or {})}
    return _resolve(_infer(t, env, u), u, t)


def _resolve(s, u: Universe, t):
    if not isinstance(s, _Lit):
        return s
    for name, ty in u.types.items():
        if s.v in ty:
            return Base(name)
    raise SortMismatch("a value of some declared type", s.v, show(t))


def _expect(t, want, env: dict, u: Universe, where: str) -> None:
    # pairs and lambdas are checked inward so bare constants meet the wanted sort
    if isinstance(t, PairT) and isinstance(want, Prod):
        _expect(t.l, want.l, env, u, where)
        _expect(t.r, want.r, env, u, where)
        return
    if isinstance(t, Lam) and isinstance(want, Arrow) and t.sort == want.dom:
        _expect(t.body, want.cod, {**env, t.var: t.sort}, u, where)
        return
    found = _infer(t, env, u)
    if isinstance(found, _Lit):
        if not sort_contains(want, found.v, u):
            raise SortMismatch(want, found.v, where)
    elif found != want:
        raise SortMismatch(want, found, where)


def _infer(t, env: dict, u: Universe):
    if isinstance(t, Const):
        return BOOL if isinstance(t.v, Bool) else _Lit(t.v)
    if isinstance(t, Var):
        if t.name in env:
            return env[t.name]
        raise UnboundVariable(t.name)
    if isinstance(t, App):
        fs = _resolve(_infer(t.fn, env, u), u, t.fn)
        if not isinstance(fs, Arrow):
            raise SortMismatch("an arrow sort", fs, f"head of {show(t)}")
        _expect(t.arg, fs.dom, env, u, f"argument of {show(t)}")
        return fs.cod
    if isinstance(t, Lam):
        well_formed(t.sort, u)
        body = _resolve(_infer(t.body, {**env, t.var: t.sort}, u), u, t.body)
        return Arrow(t.sort, body)
    if isinstance(t, PairT):
        return Prod(_resolve(_infer(t.l, env, u), u, t.l), _resolve(_infer(t.r, env, u), u, t.r))
    if isinstance(t, Couple):
        f = _resolve(_infer(t.l, env, u), u, t.l)
        g = _resolve(_infer(t.r, env, u), u, t.r)
        for side in (f, g):
            if not isinstance(side, Arrow):
                raise SortMismatch("an arrow sort", side, f"coupling {show(t)}")
        if f.dom != g.dom:
            raise SortMismatch(f.dom, g.dom, f"right side of {show(t)}")
        return Arrow(f.dom, Prod(f.cod, g.cod))
    if isinstance(t, (Desc, Compr, Forall, Exists)):
        well_formed(t.sort, u)
        body = t.f if isinstance(t, (Forall, Exists)) else t.body
        _expect(body, BOOL, {**env, t.var: t.sort}, u, f"body of {show(t)}")
        if isinstance(t, Desc):
            return t.sort
        if isinstance(t, Compr):
            return Power(t.sort)
        return BOOL
    if isinstance(t, Eq):
        ls, rs = _infer(t.l, env, u), _infer(t.r, env, u)
        if isinstance(ls, _Lit) and isinstance(rs, _Lit):
            return BOOL
        if isinstance(ls, _Lit):
            _expect(t.l, rs, env, u, f"left side of {show(t)}")
        elif isinstance(rs, _Lit):
            _expect(t.r, ls, env, u, f"right side of {show(t)}")
        elif ls != rs:
            try:
                _expect(t.l, rs, env, u, f"left side of {show(t)}")
            except SortMismatch:
                _expect(t.r, ls, env, u, f"right side of {show(t)}")
        return BOOL
    if isinstance(t, Member):
        ss = _infer(t.set, env, u)
        if isinstance(ss, _Lit):
            if not isinstance(ss.v, FinSet):
                raise SortMismatch("a power sort", ss.v, f"right side of {show(t)}")
            _infer(t.elem, env, u)
            return BOOL
        if not isinstance(ss, Power):
            raise SortMismatch("a power sort", ss, f"right side of {show(t)}")
        _expect(t.elem, ss.inner, env, u, f"left side of {show(t)}")
        return BOOL
    if isinstance(t, Not):
        _expect(t.f, BOOL, env, u, show(t))
        return BOOL
    if isinstance(t, (And, Or, Implies, Iff)):
        _expect(t.f, BOOL, env, u, show(t))
        _expect(t.g, BOOL, env, u, show(t))
        return BOOL
    if isinstance(t, Apply):
        ps = _resolve(_infer(t.pred, env, u), u, t.pred)
        if isinstance(ps, Power):
            _expect(t.arg, ps.inner, env, u, f"argument of {show(t)}")
        elif isinstance(ps, Arrow) and ps.cod == BOOL:
            _expect(t.arg, ps.dom, env, u, f"argument of {show(t)}")
        else:
            raise SortMismatch("a predicate sort", ps, f"head of {show(t)}")
        return BOOL
    raise TypeError(f"not a term: {t!r}")

