"""Terms and formulas of minimal predicate logic.

The language is deliberately small: atoms over first-order terms, implication
and universal quantification.  Nothing in this package ever substitutes a term
for a variable; quantifiers are handled purely by scoping, so every analysis
here is a plain structural recursion.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Mapping


class ParseError(ValueError):
    """Malformed input; ``position`` is the character offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotNegative(ValueError):
    """Raised when a formula with a quantifier on its spine is decomposed."""


class NotBarendregt(ValueError):
    """Raised when an operation requires pairwise distinct binders."""


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func(Term):
    name: str
    args: tuple[Term, ...]

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Formula:
    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    pred: str
    terms: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


# ---------------------------------------------------------------------------
# Polarity


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOTH = "both"
    NEITHER = "neither"


@lru_cache(maxsize=None)
def _pos_neg(f: Formula) -> tuple[bool, bool]:
    if isinstance(f, Atom):
        return True, True
    if isinstance(f, Imp):
        lpos, lneg = _pos_neg(f.left)
        rpos, rneg = _pos_neg(f.right)
        return lneg and rpos, lpos and rneg
    # a universally quantified formula is never negative
    bpos, _ = _pos_neg(f.body)
    return bpos, False


def polarity(f: Formula) -> Polarity:
    """Polarity of a formula.

    Atoms are both positive and negative; an implication flips polarity on
    the left; a universal quantifier is only ever positive.
    """
    pos, neg = _pos_neg(f)
    if pos and neg:
        return Polarity.BOTH
    if pos:
        return Polarity.POSITIVE
    if neg:
        return Polarity.NEGATIVE
    return Polarity.NEITHER


# ---------------------------------------------------------------------------
# Variable analyses


@lru_cache(maxsize=None)
def free_vars(x: Term | Formula) -> frozenset[str]:
    """Free variables of a term or formula."""
    if isinstance(x, Var):
        return frozenset((x.name,))
    if isinstance(x, Func):
        return frozenset().union(*map(free_vars, x.args)) if x.args else frozenset()
    if isinstance(x, Atom):
        return frozenset().union(*map(free_vars, x.terms)) if x.terms else frozenset()
    if isinstance(x, Imp):
        return free_vars(x.left) | free_vars(x.right)
    if isinstance(x, Forall):
        return free_vars(x.body) - {x.var}
    raise TypeError(f"not a term or formula: {x!r}")


@lru_cache(maxsize=None)
def bound_vars(f: Formula) -> tuple[str, ...]:
    """All variables bound anywhere in ``f``, in left-to-right binder order.

    Duplicate-free exactly when ``f`` satisfies the Barendregt condition.
    """
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Imp):
        return bound_vars(f.left) + bound_vars(f.right)
    return (f.var,) + bound_vars(f.body)


@lru_cache(maxsize=None)
def decompose(f: Formula) -> tuple[Atom, tuple[Formula, ...]]:
    """Split ``A1 -> ... -> An -> P`` into ``(P, (A1, ..., An))``, P atomic.

    Raises NotNegative if a quantifier sits on the implication spine, i.e.
    whenever ``f`` is not a negative formula.
    """
    args = []
    while isinstance(f, Imp):
        args.append(f.left)
        f = f.right
    if isinstance(f, Atom):
        return f, tuple(args)
    raise NotNegative(f"quantifier on the implication spine: {print_formula(f)}")


@lru_cache(maxsize=None)
def pieces(f: Formula) -> frozenset[Formula]:
    """The formulas sitting at the positions of the tree of ``f``, verbatim.

    No substitution is performed, so a quantified variable stays in place;
    the set of pieces is the closed vocabulary of everything proof search
    can ever put in a sequent.
    """
    out = {f}
    if isinstance(f, Imp):
        out |= pieces(f.left) | pieces(f.right)
    elif isinstance(f, Forall):
        out |= pieces(f.body)
    return frozenset(out)


def _rename_term(t: Term, env: Mapping[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(env.get(t.name, t.name))
    return Func(t.name, tuple(_rename_term(a, env) for a in t.args))


def barendregt_rename(f: Formula) -> Formula:
    """Rename binders apart: pairwise distinct and distinct from free vars.

    Deterministic: binders are visited leftmost-outermost and a clashing
    binder ``x`` becomes ``x_N`` for the next value ``N`` of one counter
    shared by the whole traversal.  Free variables are never touched.
    """
    used = set(free_vars(f))
    counter = itertools.count(1)

    def freshen(name: str) -> str:
        while True:
            candidate = f"{name}_{next(counter)}"
            if candidate not in used:
                return candidate

    def go(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, Atom):
            if not env:
                return g
            return Atom(g.pred, tuple(_rename_term(t, env) for t in g.terms))
        if isinstance(g, Imp):
            return Imp(go(g.left, env), go(g.right, env))
        if g.var not in used:
            used.add(g.var)
            return Forall(g.var, go(g.body, env))
        name = freshen(g.var)
        used.add(name)
        return Forall(name, go(g.body, {**env, g.var: name}))

    return go(f, {})


@dataclass(frozen=True)
class ScopeTable:
    """Binder scope sets of a formula plus its maximum binder nesting depth.

    ``scopes[x]`` is the set of variables bound inside the subtree rooted at
    the binder of ``x``, including ``x`` itself; ``depth`` is the number of
    binders on the deepest root-to-leaf chain.
    """

    scopes: Mapping[str, frozenset[str]]
    depth: int


def scope_table(f: Formula) -> ScopeTable:
    """Scope sets and nesting depth of a Barendregt-renamed formula."""
    seq = bound_vars(f)
    if len(seq) != len(set(seq)):
        dup = next(x for i, x in enumerate(seq) if x in seq[:i])
        raise NotBarendregt(f"duplicate binder {dup!r}")
    scopes: dict[str, frozenset[str]] = {}

    def walk(g: Formula) -> int:
        if isinstance(g, Atom):
            return 0
        if isinstance(g, Imp):
            return max(walk(g.left), walk(g.right))
        scopes[g.var] = frozenset(bound_vars(g))
        return 1 + walk(g.body)

    return ScopeTable(scopes, walk(f))


# ---------------------------------------------------------------------------
# Concrete syntax
#
#   formula := "forall" IDENT "." formula | imp
#   imp     := atomterm ("->" formula)?            right associative
#   atomterm:= IDENT ("(" term ("," term)* ")")? | "(" formula ")"
#   term    := IDENT ("(" term ("," term)* ")")?
#   IDENT   := [A-Za-z_][A-Za-z0-9_']*

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|->|[(),.\[\]{}]|\S")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_KEYWORDS = frozenset({"forall"})


class _TokenStream:
    """Token cursor shared by the formula, type and context grammars."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = [(m.group(), m.start()) for m in _TOKEN.finditer(text)]
        self.index = 0

    def peek(self) -> str | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text)

    def advance(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.position())
        self.index += 1
        return tok

    def expect(self, token: str) -> None:
        got = self.peek()
        if got != token:
            found = "end of input" if got is None else repr(got)
            raise ParseError(f"expected {token!r}, found {found}", self.position())
        self.index += 1

    def ident(self) -> str:
        got = self.peek()
        if got is None or got in _KEYWORDS or not _IDENT.match(got):
            found = "end of input" if got is None else repr(got)
            raise ParseError(f"expected an identifier, found {found}", self.position())
        self.index += 1
        return got

    def finish(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"unexpected trailing input {self.peek()!r}", self.position())


def _parse_formula(ts: _TokenStream) -> Formula:
    if ts.peek() == "forall":
        ts.advance()
        var = ts.ident()
        ts.expect(".")
        return Forall(var, _parse_formula(ts))
    left = _parse_atomterm(ts)
    if ts.peek() == "->":
        ts.advance()
        return Imp(left, _parse_formula(ts))
    return left


def _parse_atomterm(ts: _TokenStream) -> Formula:
    if ts.peek() == "(":
        ts.advance()
        inner = _parse_formula(ts)
        ts.expect(")")
        return inner
    pred = ts.ident()
    if ts.peek() != "(":
        return Atom(pred)
    ts.advance()
    args = [_parse_term(ts)]
    while ts.peek() == ",":
        ts.advance()
        args.append(_parse_term(ts))
    ts.expect(")")
    return Atom(pred, tuple(args))


def _parse_term(ts: _TokenStream) -> Term:
    name = ts.ident()
    if ts.peek() != "(":
        return Var(name)
    ts.advance()
    args = [_parse_term(ts)]
    while ts.peek() == ",":
        ts.advance()
        args.append(_parse_term(ts))
    ts.expect(")")
    return Func(name, tuple(args))


def parse_formula(text: str) -> Formula:
    """Parse a formula; see the grammar above for the concrete syntax."""
    ts = _TokenStream(text)
    f = _parse_formula(ts)
    ts.finish()
    return f


@lru_cache(maxsize=None)
def print_formula(f: Formula) -> str:
    """Canonical text form of a formula; ``parse_formula`` inverts it."""
    if isinstance(f, Atom):
        if not f.terms:
            return f.pred
        return f"{f.pred}({', '.join(map(str, f.terms))})"
    if isinstance(f, Imp):
        left = print_formula(f.left)
        if not isinstance(f.left, Atom):
            left = f"({left})"
        return f"{left} -> {print_formula(f.right)}"
    body = print_formula(f.body)
    if isinstance(f.body, Imp):
        body = f"({body})"
    return f"forall {f.var}. {body}"
