"""Abstract syntax of the description language: sorts, terms and formulas.

Terms and formulas are separate node families. Formulas evaluate to booleans
and may stand wherever a term of sort ``bool`` is expected; terms reach into
formulas through ``Apply`` (a predicate applied to an argument).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .values import Atom, Bool, Value


# -- sorts ------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Base:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class BoolSort:
    def __str__(self) -> str:
        return "bool"


@dataclass(frozen=True, slots=True)
class Power:
    inner: "Sort"

    def __str__(self) -> str:
        return f"[{self.inner}]"


@dataclass(frozen=True, slots=True)
class Prod:
    l: "Sort"
    r: "Sort"

    def __str__(self) -> str:
        return f"({self.l} x {self.r})"


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "Sort"
    cod: "Sort"

    def __str__(self) -> str:
        return f"({self.dom} -> {self.cod})"


Sort = Union[Base, BoolSort, Power, Prod, Arrow]
BOOL = BoolSort()


# -- terms --------------------------------------------------------------------------


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, slots=True, repr=True)
class Const(Term):
    v: Value


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str
    sort: Optional[Sort] = None


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Lam(Term):
    var: str
    sort: Sort
    body: Term


@dataclass(frozen=True, slots=True)
class PairT(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Couple(Term):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Desc(Term):
    var: str
    sort: Sort
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Compr(Term):
    var: str
    sort: Sort
    body: "Formula"


# -- formulas -----------------------------------------------------------------------


class Formula(Term):
    """Formulas are terms of sort bool; the subclass keeps the categories apart."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    l: Term
    r: Term


@dataclass(frozen=True, slots=True)
class Member(Formula):
    elem: Term
    set: Term


@dataclass(frozen=True, slots=True)
class Not(Formula):
    f: Term


@dataclass(frozen=True, slots=True)
class And(Formula):
    f: Term
    g: Term


@dataclass(frozen=True, slots=True)
class Or(Formula):
    f: Term
    g: Term


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    f: Term
    g: Term


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    f: Term
    g: Term


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    sort: Sort
    f: Term


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    sort: Sort
    f: Term


@dataclass(frozen=True, slots=True)
class Apply(Formula):
    pred: Term
    arg: Term


BINDERS = (Lam, Desc, Compr, Forall, Exists)
CONNECTIVES = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def binder_body(t) -> Term:
    return t.f if isinstance(t, (Forall, Exists)) else t.body


def rebuild_binder(t, var: str, body: Term):
    return type(t)(var, t.sort, body)


def children(t) -> tuple:
    """Immediate subterms, binders excluded."""
    if isinstance(t, (Const, Var)):
        return ()
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, (PairT, Couple, Eq)):
        return (t.l, t.r)
    if isinstance(t, Member):
        return (t.elem, t.set)
    if isinstance(t, Not):
        return (t.f,)
    if isinstance(t, (And, Or, Implies, Iff)):
        return (t.f, t.g)
    if isinstance(t, Apply):
        return (t.pred, t.arg)
    if isinstance(t, BINDERS):
        return (binder_body(t),)
    raise TypeError(f"not a term: {t!r}")


def rebuild(t, kids: tuple):
    """Same node with new children, in the order :func:`children` yields them."""
    if isinstance(t, (Const, Var)):
        return t
    if isinstance(t, BINDERS):
        return rebuild_binder(t, t.var, kids[0])
    return type(t)(*kids)


def subterms(t):
    yield t
    for k in children(t):
        yield from subterms(k)


def depth(t) -> int:
    ks = children(t)
    return 1 + (max(depth(k) for k in ks) if ks else 0)


# -- variables ------------------------------------------------------------------------


def free_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset({t.name})
    if isinstance(t, BINDERS):
        return free_vars(binder_body(t)) - {t.var}
    out = frozenset()
    for k in children(t):
        out |= free_vars(k)
    return out


def bound_vars(t) -> set:
    return {s.var for s in subterms(t) if isinstance(s, BINDERS)}


def subst(t, name: str, replacement: Term):
    """Replace free occurrences of ``name``; ``replacement`` must be closed."""
    if isinstance(t, Var):
        return replacement if t.name == name else t
    if isinstance(t, BINDERS):
        if t.var == name:
            return t
        return rebuild_binder(t, t.var, subst(binder_body(t), name, replacement))
    return rebuild(t, tuple(subst(k, name, replacement) for k in children(t)))


def fresh(base: str, taken) -> str:
    if base not in taken:
        return base
    n = 1
    while f"{base}{n}" in taken:
        n += 1
    return f"{base}{n}"


def alpha_rename(t):
    """Rename binders so no bound name repeats or collides with a free name."""
    taken = set(free_vars(t))

    def go(s, env: dict):
        if isinstance(s, Var):
            new = env.get(s.name)
            return Var(new, s.sort) if new else s
        if isinstance(s, BINDERS):
            new = fresh(s.var, taken)
            taken.add(new)
            return rebuild_binder(s, new, go(binder_body(s), {**env, s.var: new}))
        return rebuild(s, tuple(go(k, env) for k in children(s)))

    return go(t, {})


def alpha_eq(a, b) -> bool:
    """Structural equality up to the names of bound variables."""

    def go(x, y, ex: dict, ey: dict, level: int) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, Var):
            bx, by = ex.get(x.name), ey.get(y.name)
            if bx is None and by is None:
                return x.name == y.name
            return bx == by
        if isinstance(x, Const):
            return x.v == y.v
        if isinstance(x, BINDERS):
            if x.sort != y.sort:
                return False
            return go(binder_body(x), binder_body(y),
                      {**ex, x.var: level}, {**ey, y.var: level}, level + 1)
        kx, ky = children(x), children(y)
        return len(kx) == len(ky) and all(go(p, q, ex, ey, level) for p, q in zip(kx, ky))

    return go(a, b, {}, {}, 0)


# -- printing -------------------------------------------------------------------------


def show_sort(s) -> str:
    if isinstance(s, Base):
        return s.name
    if isinstance(s, BoolSort):
        return "bool"
    if isinstance(s, Power):
        return f"[{show_sort(s.inner)}]"
    if isinstance(s, Prod):
        return f"({show_sort(s.l)} x {show_sort(s.r)})"
    if isinstance(s, Arrow):
        return f"({show_sort(s.dom)} -> {show_sort(s.cod)})"
    raise TypeError(f"not a sort: {s!r}")


def show_value(v) -> str:
    if isinstance(v, Atom):
        return "'" + v.name
    if isinstance(v, Bool):
        return "true" if v.b else "false"
    return "'" + str(v)


def show(t) -> str:
    """Concrete syntax that :func:`vdc.parser.parse_term` reads back."""
    if isinstance(t, Const):
        return show_value(t.v)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        return f"({show(t.fn)} {show(t.arg)})"
    if isinstance(t, PairT):
        return f"[{show(t.l)}, {show(t.r)}]"
    if isinstance(t, Couple):
        return f"<{show(t.l)}, {show(t.r)}>"
    if isinstance(t, Lam):
        return f"(\\{t.var}:{show_sort(t.sort)}. {show(t.body)})"
    if isinstance(t, Desc):
        return f"(desc {t.var}:{show_sort(t.sort)}. {show(t.body)})"
    if isinstance(t, Compr):
        return f"{{{t.var}:{show_sort(t.sort)} | {show(t.body)}}}"
    if isinstance(t, Eq):
        return f"({show(t.l)} = {show(t.r)})"
    if isinstance(t, Member):
        return f"({show(t.elem)} in {show(t.set)})"
    if isinstance(t, Not):
        return f"(not {show(t.f)})"
    if isinstance(t, (And, Or, Implies, Iff)):
        return f"({show(t.f)} {CONNECTIVES[type(t)]} {show(t.g)})"
    if isinstance(t, (Forall, Exists)):
        q = "forall" if isinstance(t, Forall) else "exists"
        return f"({q} {t.var}:{show_sort(t.sort)}. {show(t.f)})"
    if isinstance(t, Apply):
        head = show(t.pred)
        if not isinstance(t.pred, Var):
            head = head if head.startswith("(") else f"({head})"
        return f"{head}({show(t.arg)})"
    raise TypeError(f"not a term: {t!r}")
