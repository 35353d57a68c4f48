"""Recursive-descent parser for set expressions and formulas.

Grammar (terms, tightest first)::

    primary := "N" | "empty" | "I" | "0" | "M(" nat "," nat ")"
             | "{" [nat ("," nat)*] "}" | ident | "(" term ")"
    unary   := "~" unary | primary
    inter   := unary ("&" unary)*
    diff    := inter ("\\" inter)*
    term    := diff ("+" diff)*

Formulas::

    atomic  := term ("sub" | "<" | ">" | "~" | "=" | "!=") term
             | "atom(" term ")" | "unit(" term ")" | "sum(" term "," term "," term ")"
    unary   := "!" unary | ("all" | "some") ident unary | "(" formula ")" | atomic
    and     := unary ("&" unary)*
    or      := and ("|" and)*
    implies := or ["->" implies]
    formula := implies ["<->" implies]

Two ambiguities are settled as follows.  At the top level of an atomic
formula's operand, ``&`` ends the term and is read as conjunction; inside
parentheses or function arguments it is intersection.  ``~`` between two
terms means same size, in prefix position it means complement.  A ``(`` in
formula position is tried as a parenthesized formula first and re-read as
the start of a term when that fails.

Ground subterms built only from named sets are folded into one named set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .formulas import (And, Atom, Difference, Equal, Exists, ForAll, Iff, Implies,
                       Intersect, Less, Named, Not, Or, SameSize, Subset, Sum,
                       Union, Unit, Universe, Var, Zero, fold, fold_term)
from .periodic import EMPTY, NATURALS, PeriodicSet, complement, congruence_class, finite_set

__all__ = ["parse", "parse_formula", "parse_term", "parse_set", "RESERVED"]

RESERVED = frozenset({"all", "some", "sub", "atom", "unit", "sum", "N", "I", "M", "empty"})

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym><->|->|!=|[(){},+&\\~<>=|!])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "nat", "ident", "sym", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Fail(Exception):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.best = (-1, "")

    # -- helpers ---------------------------------------------------------
    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("sym", "ident") and tok.text == text

    def fail(self, message: str):
        pos = self.peek().pos
        if pos > self.best[0]:
            self.best = (pos, message)
        raise _Fail()

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = self.peek().text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        tok = self.peek()
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.peek()
        if tok.kind != "nat":
            self.fail(f"expected a natural number, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    def error(self) -> ParseError:
        pos, message = self.best
        if pos < 0:
            pos, message = self.peek().pos, "syntax error"
        return ParseError(message, self.text, pos)

    # -- terms -----------------------------------------------------------
    def term(self, amp: bool = True):
        left = self.diff(amp)
        while self.at("+"):
            self.i += 1
            left = Union(left, self.diff(amp))
        return left

    def diff(self, amp: bool):
        left = self.inter(amp)
        while self.at("\\"):
            self.i += 1
            left = Difference(left, self.inter(amp))
        return left

    def inter(self, amp: bool):
        left = self.unary_term()
        while amp and self.at("&"):
            self.i += 1
            left = Intersect(left, self.unary_term())
        return left

    def unary_term(self):
        if self.at("~"):
            self.i += 1
            inner = fold_term(self.unary_term())
            if isinstance(inner, Named):
                return Named(complement(inner.value))
            return Difference(Universe(), inner)
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok.kind == "nat":
            if tok.text != "0":
                self.fail("a bare number other than 0 is not a term; use {n}")
            self.i += 1
            return Zero()
        if tok.kind == "ident":
            word = tok.text
            if word == "N":
                self.i += 1
                return Named(NATURALS)
            if word == "empty":
                self.i += 1
                return Named(EMPTY)
            if word == "I":
                self.i += 1
                return Universe()
            if word == "M":
                self.i += 1
                self.expect("(")
                n = self.nat()
                self.expect(",")
                r_pos = self.peek().pos
                r = self.nat()
                self.expect(")")
                if n < 1 or r >= n:
                    self.best = (r_pos, f"M(n,r) needs 0 <= r < n, got M({n},{r})")
                    raise _Fail()
                return Named(congruence_class(n, r))
            if word in RESERVED:
                self.fail(f"reserved word {word!r} cannot be used as a term")
            self.i += 1
            return Var(word)
        if self.at("{"):
            self.i += 1
            values = []
            if not self.at("}"):
                values.append(self.nat())
                while self.at(","):
                    self.i += 1
                    values.append(self.nat())
            self.expect("}")
            return Named(finite_set(values))
        if self.at("("):
            self.i += 1
            inner = self.term(True)
            self.expect(")")
            return inner
        self.fail(f"expected a term, found {tok.text or 'end of input'!r}")

    # -- formulas --------------------------------------------------------
    def formula(self):
        left = self.implication()
        if self.at("<->"):
            self.i += 1
            return Iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.at("|"):
            self.i += 1
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.at("&"):
            self.i += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        if self.at("!"):
            self.i += 1
            return Not(self.unary())
        if self.at("all") or self.at("some"):
            quant = ForAll if self.peek().text == "all" else Exists
            self.i += 1
            tok = self.peek()
            if tok.kind != "ident" or tok.text in RESERVED:
                self.fail(f"expected a variable after quantifier, found {tok.text or 'end of input'!r}")
            self.i += 1
            return quant(tok.text, self.unary())
        if self.at("("):
            start = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                return inner
            except _Fail:
                self.i = start
        return self.atomic()

    def atomic(self):
        for word, cls in (("atom", Atom), ("unit", Unit)):
            if self.at(word):
                self.i += 1
                self.expect("(")
                t = self.term(True)
                self.expect(")")
                return cls(t)
        if self.at("sum"):
            self.i += 1
            self.expect("(")
            a = self.term(True)
            self.expect(",")
            b = self.term(True)
            self.expect(",")
            c = self.term(True)
            self.expect(")")
            return Sum(a, b, c)
        left = self.term(False)
        op = self.peek().text
        if op not in ("sub", "<", ">", "~", "=", "!="):
            self.fail(f"expected a relation (sub, <, >, ~, =), found {op or 'end of input'!r}")
        self.i += 1
        right = self.term(False)
        if op == "sub":
            return Subset(left, right)
        if op == "<":
            return Less(left, right)
        if op == ">":
            return Less(right, left)
        if op == "~":
            return SameSize(left, right)
        if op == "=":
            return Equal(left, right)
        return Not(Equal(left, right))

    def finish(self, result):
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return result


def parse_formula(text: str):
    """Parse a formula; raises :class:`ParseError` with line and column."""
    p = _Parser(text)
    try:
        return fold(p.finish(p.formula()))
    except _Fail:
        raise p.error() from None


parse = parse_formula


def parse_term(text: str):
    p = _Parser(text)
    try:
        return fold_term(p.finish(p.term(True)))
    except _Fail:
        raise p.error() from None


def parse_set(text: str) -> PeriodicSet:
    """Parse a ground set expression into its canonical periodic set."""
    t = parse_term(text)
    if not isinstance(t, Named):
        raise ParseError("set expression may only use N, empty, M(n,r), {..} and operators",
                         text, 0)
    return t.value
