"""Tokenizer and recursive-descent parser for terms, formulas and sorts.

Precedence, loosest first: ``<->``, ``->`` (right), ``|``, ``&``, ``not`` and
the quantifiers, then ``=``/``in``. Binder bodies extend as far right as
possible. ``f(x)`` with no space before the parenthesis is predicate
application; ``(f x)`` is ordinary application.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .formats import read_value
from .syntax import (BOOL, And, App, Apply, Arrow, Base, Compr, Const, Couple, Desc,
                     Eq, Exists, Forall, Iff, Implies, Lam, Member, Not, Or, PairT,
                     Power, Prod, Var, alpha_rename)
from .values import FALSE, TRUE

KEYWORDS = {"desc", "not", "forall", "exists", "in", "true", "false"}
SYMBOLS = ["<->", "->", "\\", "λ", ".", ":", "(", ")", "[", "]", "{", "}",
           "<", ">", ",", "|", "=", "&"]
_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass
class Token:
    kind: str  # "id", "kw", "const", "sym", "eof"
    text: str
    line: int
    col: int
    spaced: bool
    value: object = None


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    spaced = True
    while True:
        while pos < len(text) and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
            spaced = True
        col = pos - line_start + 1
        if pos >= len(text):
            out.append(Token("eof", "", line, col, spaced))
            return out
        c = text[pos]
        if c == "'":
            try:
                v, end = read_value(text, pos + 1)
            except ParseError:
                raise ParseError(line, col, "a constant after the quote") from None
            out.append(Token("const", text[pos:end], line, col, spaced, v))
            pos = end
        elif m := _ID.match(text, pos):
            word = m.group()
            out.append(Token("kw" if word in KEYWORDS else "id", word, line, col, spaced))
            pos = m.end()
        else:
            for sym in SYMBOLS:
                if text.startswith(sym, pos):
                    out.append(Token("sym", "\\" if sym == "λ" else sym, line, col, spaced))
                    pos += len(sym)
                    break
            else:
                raise ParseError(line, col, "a token", c)
        spaced = False


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.scope: list[tuple[str, object]] = []

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "kw") and t.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(repr(text))
        return self.advance()

    def ident(self) -> str:
        if self.tok.kind != "id":
            self.error("an identifier")
        return self.advance().text

    def error(self, expected: str):
        t = self.tok
        raise ParseError(t.line, t.col, expected, t.text or "end of input")

    def done(self):
        if self.tok.kind != "eof":
            self.error("end of input")

    # -- sorts --

    def sort(self):
        left = self.prod_sort()
        if self.at("->"):
            self.advance()
            return Arrow(left, self.sort())
        return left

    def prod_sort(self):
        left = self.atom_sort()
        while self.tok.kind == "id" and self.tok.text == "x":
            self.advance()
            left = Prod(left, self.atom_sort())
        return left

    def atom_sort(self):
        t = self.tok
        if t.kind == "id" and t.text == "bool":
            self.advance()
            return BOOL
        if t.kind == "id" and t.text != "x":
            self.advance()
            return Base(t.text)
        if self.at("["):
            self.advance()
            if self.at("]"):
                self.advance()
                return BOOL
            inner = self.sort()
            self.expect("]")
            return Power(inner)
        if self.at("("):
            self.advance()
            s = self.sort()
            self.expect(")")
            return s
        self.error("a sort")

    # -- binders --

    def binder(self, end: str):
        name = self.ident()
        self.expect(":")
        s = self.sort()
        self.expect(end)
        self.scope.append((name, s))
        try:
            body = self.expr()
        finally:
            self.scope.pop()
        return name, s, body

    def lookup(self, name: str):
        for n, s in reversed(self.scope):
            if n == name:
                return s
        return None

    # -- formulas and terms --

    def expr(self):
        left = self.implies()
        while self.at("<->"):
            self.advance()
            left = Iff(left, self.implies())
        return left

    def implies(self):
        left = self.disj()
        if self.at("->"):
            self.advance()
            return Implies(left, self.implies())
        return left

    def disj(self):
        left = self.conj()
        while self.at("|"):
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.at("&"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self):
        if self.at("not"):
            self.advance()
            return Not(self.unary())
        for kw, node in (("forall", Forall), ("exists", Exists)):
            if self.at(kw):
                self.advance()
                return node(*self.binder("."))
        return self.relation()

    def relation(self):
        left = self.postfix()
        if self.at("="):
            self.advance()
            return Eq(left, self.postfix())
        if self.at("in"):
            self.advance()
            return Member(left, self.postfix())
        return left

    def postfix(self):
        t = self.primary()
        while self.at("(") and not self.tok.spaced:
            self.advance()
            arg = self.expr()
            self.expect(")")
            t = Apply(t, arg)
        return t

    def primary(self):
        t = self.tok
        if t.kind == "id":
            self.advance()
            return Var(t.text, self.lookup(t.text))
        if t.kind == "const":
            self.advance()
            return Const(t.value)
        if self.at("true") or self.at("false"):
            self.advance()
            return Const(TRUE if t.text == "true" else FALSE)
        if self.at("("):
            self.advance()
            head = self.expr()
            if self.at(")"):
                self.advance()
                return head
            arg = self.expr()
            self.expect(")")
            return App(head, arg)
        if self.at("\\"):
            self.advance()
            return Lam(*self.binder("."))
        if self.at("desc"):
            self.advance()
            return Desc(*self.binder("."))
        if self.at("["):
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return PairT(left, right)
        if self.at("<"):
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(">")
            return Couple(left, right)
        if self.at("{"):
            self.advance()
            name, s, body = self.binder("|")
            self.expect("}")
            return Compr(name, s, body)
        self.error("a term")


def parse_term(text: str):
    """Parse a term or formula and alpha-rename its binders apart."""
    p = Parser(text)
    t = p.expr()
    p.done()
    return alpha_rename(t)


parse_formula = parse_term


def parse_sort(text: str):
    p = Parser(text)
    s = p.sort()
    p.done()
    return s
